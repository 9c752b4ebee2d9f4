#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace chromabound {

enum class Family : unsigned char { E = 0, F = 1 };

// Projection e_{v,i} (family E) or f_{v,i} (family F).
struct Generator {
  Family family;
  int vertex;
  int outcome;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator e(int v, int i) { return {Family::E, v, i}; }
inline Generator f(int v, int i) { return {Family::F, v, i}; }

// A monomial in canonical form: every E letter precedes every F letter and
// within a family no two adjacent letters share a vertex. The empty word is
// the identity; `zero` marks the distinguished zero element.
struct Word {
  std::vector<Generator> letters;
  bool zero = false;

  static Word one() { return {}; }
  static Word null() { return {{}, true}; }

  std::size_t length() const { return letters.size(); }
  bool is_one() const { return !zero && letters.empty(); }

  // Letters of one family, in order.
  std::vector<Generator> part(Family fam) const;

  // Order: zero first, then by length, then lexicographic by letters.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
};

// Normal form under: F letters commute to the right of E letters; adjacent
// same-family letters on one vertex merge (equal outcome) or vanish (different).
Word reduce(const std::vector<Generator>& letters);

// reduce(a.letters ++ b.letters), with zero absorbing.
Word multiply(const Word& a, const Word& b);

// Reverses each family part; the adjoint of a product of projections.
Word adjoint(const Word& w);

// "1", "0", or letters such as "e0.1 e2.0 f1.1" (vertex.outcome).
std::string to_string(const Word& w);

struct WordOptions {
  std::size_t cap = 2000;
  // Restrict outcomes to 0..max_outcome-1 (default: all c outcomes).
  int max_outcome = -1;
};

// Every canonical nonzero word of length <= N over n vertices and c outcomes,
// ordered with the identity first (see Word ordering). Throws LimitExceeded
// when more than opts.cap words would be produced.
std::vector<Word> enumerate_words(int n, int c, int N, const WordOptions& opts = {});

}  // namespace chromabound
