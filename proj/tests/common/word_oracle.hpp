#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chromabound/words.hpp"

namespace testing {

using chromabound::Family;
using chromabound::Generator;
using chromabound::Word;

// Independent rewriter: applies one applicable rule at a random position
// until none applies. nullopt stands for Zero.
inline std::optional<std::vector<Generator>> rewrite(std::vector<Generator> s, std::mt19937& rng) {
  for (;;) {
    std::vector<std::size_t> sites;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      const auto& a = s[k];
      const auto& b = s[k + 1];
      if (a.family == Family::F && b.family == Family::E) sites.push_back(k);
      else if (a.family == b.family && a.vertex == b.vertex) sites.push_back(k);
    }
    if (sites.empty()) return s;
    const std::size_t k = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
    if (s[k].family != s[k + 1].family) {
      std::swap(s[k], s[k + 1]);
    } else if (s[k].outcome == s[k + 1].outcome) {
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      return std::nullopt;
    }
  }
}

inline Word as_word(const std::optional<std::vector<Generator>>& s) {
  if (!s) return Word::null();
  return Word{*s};
}

inline std::vector<Generator> random_letters(std::mt19937& rng, int n, int c, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), fam(0, 1), vtx(0, n - 1), out(0, c - 1);
  std::vector<Generator> s(len(rng));
  for (auto& g : s) g = {fam(rng) ? Family::F : Family::E, vtx(rng), out(rng)};
  return s;
}

// Oracle for Gamma_N: every generator string of length <= N, rewritten.
inline std::set<std::string> exhaustive_words(int n, int c, int N) {
  std::vector<Generator> gens;
  for (Family fam : {Family::E, Family::F})
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < c; ++i) gens.push_back({fam, v, i});
  std::mt19937 rng(1);
  std::set<std::string> out;
  std::vector<std::vector<Generator>> level{{}};
  for (int len = 0; len <= N; ++len) {
    std::vector<std::vector<Generator>> next;
    for (const auto& s : level) {
      Word w = as_word(rewrite(s, rng));
      if (!w.zero) out.insert(to_string(w));
      if (len < N)
        for (const auto& g : gens) {
          next.push_back(s);
          next.back().push_back(g);
        }
    }
    level = std::move(next);
  }
  return out;
}

inline bool canonical(const Word& w) {
  if (w.zero) return w.letters.empty();
  for (std::size_t k = 0; k + 1 < w.letters.size(); ++k) {
    const auto& a = w.letters[k];
    const auto& b = w.letters[k + 1];
    if (a.family == Family::F && b.family == Family::E) return false;
    if (a.family == b.family && a.vertex == b.vertex) return false;
  }
  return true;
}


}  // namespace testing
