#include "chromabound/words.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "chromabound/errors.hpp"

namespace chromabound {

namespace {

// Stack reduction within one family. Returns false if the product vanishes.
bool reduce_family(std::vector<Generator>& out, const Generator& g) {
  if (!out.empty() && out.back().vertex == g.vertex) return out.back().outcome == g.outcome;
  out.push_back(g);
  return true;
}

}  // namespace

std::vector<Generator> Word::part(Family fam) const {
  std::vector<Generator> out;
  for (const auto& g : letters)
    if (g.family == fam) out.push_back(g);
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.zero != b.zero) return a.zero ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.letters.size() != b.letters.size()) return a.letters.size() <=> b.letters.size();
  return a.letters <=> b.letters;
}

Word reduce(const std::vector<Generator>& letters) {
  std::vector<Generator> es, fs;
  for (const auto& g : letters) {
    auto& target = g.family == Family::E ? es : fs;
    if (!reduce_family(target, g)) return Word::null();
  }
  Word w;
  w.letters = std::move(es);
  w.letters.insert(w.letters.end(), fs.begin(), fs.end());
  return w;
}

Word multiply(const Word& a, const Word& b) {
  if (a.zero || b.zero) return Word::null();
  std::vector<Generator> all = a.letters;
  all.insert(all.end(), b.letters.begin(), b.letters.end());
  return reduce(all);
}

Word adjoint(const Word& w) {
  if (w.zero) return w;
  Word out;
  auto es = w.part(Family::E), fs = w.part(Family::F);
  out.letters.assign(es.rbegin(), es.rend());
  out.letters.insert(out.letters.end(), fs.rbegin(), fs.rend());
  return out;
}

std::string to_string(const Word& w) {
  if (w.zero) return "0";
  if (w.letters.empty()) return "1";
  std::string s;
  for (const auto& g : w.letters) {
    if (!s.empty()) s += ' ';
    s += g.family == Family::E ? 'e' : 'f';
    s += std::to_string(g.vertex) + "." + std::to_string(g.outcome);
  }
  return s;
}

std::vector<Word> enumerate_words(int n, int c, int N, const WordOptions& opts) {
  if (n < 0 || c < 1 || N < 0) throw std::invalid_argument("enumerate_words: need n >= 0, c >= 1, N >= 0");
  const int outcomes = opts.max_outcome < 0 ? c : std::min(c, opts.max_outcome);
  std::vector<Generator> gens;
  for (Family fam : {Family::E, Family::F})
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < outcomes; ++i) gens.push_back({fam, v, i});

  std::vector<Word> out{Word::one()};
  std::vector<Word> frontier{Word::one()};
  for (int len = 1; len <= N; ++len) {
    std::set<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        Word x = multiply(w, Word{{g}});
        if (!x.zero && static_cast<int>(x.length()) == len) next.insert(std::move(x));
      }
    if (out.size() + next.size() > opts.cap)
      throw LimitExceeded("enumerate_words: more than " + std::to_string(opts.cap) +
                          " words at length " + std::to_string(len));
    frontier.assign(next.begin(), next.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  return out;
}

}  // namespace chromabound
