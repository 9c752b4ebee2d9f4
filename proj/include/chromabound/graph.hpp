#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chromabound {

// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<int>;
using Edge = std::pair<int, int>;

// Undirected simple graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, std::string name = {});
  Graph(int n, const std::vector<Edge>& edges, std::string name = {});

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return num_edges_; }
  const std::string& name() const { return name_; }

  bool adjacent(int v, int w) const {
    return adj_[static_cast<std::size_t>(v) * n_ + w] != 0;
  }
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  Graph with_name(std::string name) const;

  // Compares vertex count and adjacency; names are ignored.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::uint8_t> adj_;
  std::string name_;
};

Graph empty_graph(int n);
Graph complete(int n);
Graph cycle(int k);
Graph path(int n);
Graph kneser(int a, int b);

Graph complement(const Graph& g);

// (g,h) ~ (g',h') iff g ~ g' or h ~ h'. Vertex (g,h) has index g*|H| + h.
Graph disjunctive_product(const Graph& g, const Graph& h);
// (g,h) ~ (g',h') iff g ~ g', or g = g' and h ~ h'. Same vertex indexing.
Graph lexicographic_product(const Graph& g, const Graph& h);

bool is_connected(const Graph& g);
bool is_clique(const Graph& g, const VertexSet& s);
bool is_independent(const Graph& g, const VertexSet& s);

// Parses a generator expression such as "cycle:5", "kneser:5:2",
// "cycle:5*complete:3" (disjunctive product) or "cycle:5[complete:3]"
// (lexicographic product). Throws std::invalid_argument on bad input.
Graph generate(const std::string& spec);

}  // namespace chromabound
