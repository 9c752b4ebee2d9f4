#include "chromabound/cliques.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "chromabound/errors.hpp"

namespace chromabound {

namespace {

class BronKerbosch {
 public:
  BronKerbosch(const Graph& g, std::size_t cap) : g_(g), cap_(cap) {}

  std::vector<VertexSet> run() {
    std::vector<int> p(g_.num_vertices());
    for (int v = 0; v < g_.num_vertices(); ++v) p[v] = v;
    VertexSet r;
    if (!p.empty()) expand(r, p, {});
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void expand(VertexSet& r, std::vector<int> p, std::vector<int> x) {
    if (p.empty()) {
      if (x.empty()) {
        if (out_.size() >= cap_)
          throw LimitExceeded("maximal clique enumeration exceeded cap of " +
                              std::to_string(cap_));
        VertexSet s = r;
        std::sort(s.begin(), s.end());
        out_.push_back(std::move(s));
      }
      return;
    }
    // Pivot maximizing |P ∩ N(u)| over u in P ∪ X.
    int pivot = -1, best = -1;
    for (const auto* set : {&p, &x})
      for (int u : *set) {
        int cnt = 0;
        for (int v : p) cnt += g_.adjacent(u, v);
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    std::vector<int> candidates;
    for (int v : p)
      if (!g_.adjacent(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
      std::vector<int> np, nx;
      for (int w : p)
        if (g_.adjacent(v, w)) np.push_back(w);
      for (int w : x)
        if (g_.adjacent(v, w)) nx.push_back(w);
      r.push_back(v);
      expand(r, std::move(np), std::move(nx));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  const Graph& g_;
  std::size_t cap_;
  std::vector<VertexSet> out_;
};

class ColoringSearch {
 public:
  explicit ColoringSearch(const Graph& g) : g_(g), n_(g.num_vertices()) {}

  std::optional<std::vector<int>> find(int k) {
    k_ = k;
    color_.assign(n_, -1);
    if (search(0, 0)) return color_;
    return std::nullopt;
  }

 private:
  // DSatur: colour the uncoloured vertex with the most distinct neighbour
  // colours next; new colours are introduced in increasing order only.
  bool search(int colored, int used) {
    if (colored == n_) return true;
    int pick = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      std::uint64_t seen = 0;
      int deg = 0;
      for (int w = 0; w < n_; ++w)
        if (g_.adjacent(v, w)) {
          if (color_[w] >= 0) seen |= std::uint64_t{1} << color_[w];
          else ++deg;
        }
      int sat = __builtin_popcountll(seen);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best_sat = sat;
        best_deg = deg;
        pick = v;
      }
    }
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      bool ok = true;
      for (int w = 0; w < n_ && ok; ++w)
        if (g_.adjacent(pick, w) && color_[w] == c) ok = false;
      if (!ok) continue;
      color_[pick] = c;
      if (search(colored + 1, std::max(used, c + 1))) return true;
      color_[pick] = -1;
    }
    return false;
  }

  const Graph& g_;
  int n_;
  int k_ = 0;
  std::vector<int> color_;
};

}  // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g, std::size_t cap) {
  return BronKerbosch(g, cap).run();
}

std::vector<VertexSet> maximal_independent_sets(const Graph& g, std::size_t cap) {
  return maximal_cliques(complement(g), cap);
}

std::vector<VertexSet> all_cliques(const Graph& g, std::size_t cap) {
  std::vector<VertexSet> out;
  VertexSet current;
  // Extend only with larger-indexed common neighbours so each clique appears once.
  auto grow = [&](auto&& self, const std::vector<int>& candidates) -> void {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      int v = candidates[i];
      current.push_back(v);
      if (out.size() >= cap)
        throw LimitExceeded("clique enumeration exceeded cap of " + std::to_string(cap));
      out.push_back(current);
      std::vector<int> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (g.adjacent(v, candidates[j])) next.push_back(candidates[j]);
      self(self, next);
      current.pop_back();
    }
  };
  std::vector<int> all(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
  grow(grow, all);
  std::sort(out.begin(), out.end());
  return out;
}

int clique_number(const Graph& g) {
  std::size_t best = 0;
  for (const auto& c : maximal_cliques(g)) best = std::max(best, c.size());
  return static_cast<int>(best);
}

int independence_number(const Graph& g) { return clique_number(complement(g)); }

std::vector<int> optimal_coloring(const Graph& g, int max_vertices) {
  const int n = g.num_vertices();
  if (n > max_vertices)
    throw LimitExceeded("exact colouring refused: " + std::to_string(n) +
                        " vertices exceeds the limit of " + std::to_string(max_vertices));
  if (n == 0) return {};
  ColoringSearch search(g);
  for (int k = std::max(1, clique_number(g)); k <= n; ++k)
    if (auto c = search.find(k)) return *c;
  return {};  // unreachable: n colours always suffice
}

int chromatic_number(const Graph& g, int max_vertices) {
  auto c = optimal_coloring(g, max_vertices);
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != g.num_vertices()) return false;
  for (auto [u, v] : g.edges())
    if (coloring[u] == coloring[v]) return false;
  return true;
}

}  // namespace chromabound
