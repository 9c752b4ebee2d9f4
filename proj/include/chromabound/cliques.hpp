#pragma once

#include <cstddef>
#include <vector>

#include "chromabound/graph.hpp"

namespace chromabound {

constexpr std::size_t kDefaultCliqueCap = 1'000'000;
constexpr int kDefaultExactSearchLimit = 20;

// Inclusion-maximal cliques, each sorted, the list in lexicographic order.
// Bron-Kerbosch with Tomita pivoting. Throws LimitExceeded past `cap`.
std::vector<VertexSet> maximal_cliques(const Graph& g, std::size_t cap = kDefaultCliqueCap);

// maximal_cliques(complement(g)).
std::vector<VertexSet> maximal_independent_sets(const Graph& g,
                                                std::size_t cap = kDefaultCliqueCap);

// Every non-empty clique, sorted lexicographically.
std::vector<VertexSet> all_cliques(const Graph& g, std::size_t cap = kDefaultCliqueCap);

int clique_number(const Graph& g);
int independence_number(const Graph& g);

// Exact chromatic number by DSatur-ordered backtracking. Refuses graphs with
// more than `max_vertices` vertices (LimitExceeded) rather than guessing.
int chromatic_number(const Graph& g, int max_vertices = kDefaultExactSearchLimit);

// A proper colouring with chromatic_number(g) colours.
std::vector<int> optimal_coloring(const Graph& g, int max_vertices = kDefaultExactSearchLimit);

bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring);

}  // namespace chromabound
