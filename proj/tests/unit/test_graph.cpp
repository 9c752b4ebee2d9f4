#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "chromabound/cliques.hpp"
#include "chromabound/errors.hpp"
#include "chromabound/graph.hpp"
#include "chromabound/graph_io.hpp"
#include "doctest.h"

using namespace chromabound;

namespace {

Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (coin(rng)) e.emplace_back(v, w);
  return Graph(n, e);
}

VertexSet members(unsigned mask, int n) {
  VertexSet s;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1u) s.push_back(v);
  return s;
}

// Oracle: every vertex subset, keep the cliques not contained in a larger clique.
std::vector<VertexSet> brute_maximal_cliques(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<unsigned> cliques;
  for (unsigned m = 1; m < (1u << n); ++m)
    if (is_clique(g, members(m, n))) cliques.push_back(m);
  std::vector<VertexSet> out;
  for (unsigned m : cliques) {
    bool maximal = true;
    for (unsigned o : cliques)
      if (o != m && (o & m) == m) maximal = false;
    if (maximal) out.push_back(members(m, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int brute_chromatic(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  for (int k = 1;; ++k) {
    std::vector<int> col(n, 0);
    while (true) {
      if (is_proper_coloring(g, col)) return k;
      int i = 0;
      while (i < n && ++col[i] == k) col[i++] = 0;
      if (i == n) break;
    }
  }
}

}  // namespace

TEST_CASE("graph construction keeps the adjacency symmetric") {
  Graph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 1}});
  CHECK(g.num_edges() == 2);
  for (int v = 0; v < 4; ++v) {
    CHECK_FALSE(g.adjacent(v, v));
    for (int w = 0; w < 4; ++w) CHECK(g.adjacent(v, w) == g.adjacent(w, v));
  }
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 3}}), std::invalid_argument);
}

TEST_CASE("generators") {
  CHECK(complete(3).num_edges() == 3);
  CHECK(complete(1).num_edges() == 0);
  CHECK(cycle(5).num_vertices() == 5);
  CHECK(cycle(5).num_edges() == 5);
  for (int v = 0; v < 5; ++v) CHECK(cycle(5).degree(v) == 2);

  // Petersen: count disjoint 2-subset pairs of {0..4} directly.
  Graph pet = kneser(5, 2);
  int disjoint = 0;
  for (unsigned a = 0; a < 32; ++a)
    for (unsigned b = a + 1; b < 32; ++b)
      if (__builtin_popcount(a) == 2 && __builtin_popcount(b) == 2 && (a & b) == 0) ++disjoint;
  CHECK(pet.num_vertices() == 10);
  CHECK(pet.num_edges() == static_cast<std::size_t>(disjoint));
  CHECK(disjoint == 15);

  CHECK_THROWS_AS(cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(complete(0), std::invalid_argument);
  CHECK_THROWS_AS(kneser(3, 2), std::invalid_argument);
}

TEST_CASE("generator expressions") {
  CHECK(generate("cycle:5") == cycle(5));
  CHECK(generate("petersen") == kneser(5, 2));
  CHECK(generate("cycle:5*complete:3").num_vertices() == 15);
  CHECK(generate("cycle:5*complete:3") == disjunctive_product(cycle(5), complete(3)));
  CHECK(generate("cycle:5[complete:2]") == lexicographic_product(cycle(5), complete(2)));
  CHECK(generate("(cycle:5)").name() == "(cycle:5)");
  CHECK_THROWS_AS(generate("cycle"), std::invalid_argument);
  CHECK_THROWS_AS(generate("wheel:5"), std::invalid_argument);
  CHECK_THROWS_AS(generate("cycle:5]"), std::invalid_argument);
}

TEST_CASE("complement") {
  CHECK(complement(complete(4)) == Graph(4));
  CHECK(complement(cycle(5)).num_edges() == 5);
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    Graph g = random_graph(1 + t % 9, 0.4, rng);
    const int n = g.num_vertices();
    CHECK(complement(complement(g)) == g);
    CHECK(g.num_edges() + complement(g).num_edges() == static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST_CASE("products") {
  CHECK(disjunctive_product(complete(2), complete(2)) == complete(4));
  CHECK(disjunctive_product(cycle(5), complete(3)).num_vertices() == 15);
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    Graph g = random_graph(2 + t % 4, 0.5, rng), h = random_graph(1 + t % 3, 0.5, rng);
    Graph d = disjunctive_product(g, h), l = lexicographic_product(g, h);
    const int nh = h.num_vertices();
    for (auto [a, b] : l.edges()) CHECK(d.adjacent(a, b));
    // Direct check of the disjunctive rule.
    for (int a = 0; a < d.num_vertices(); ++a)
      for (int b = 0; b < d.num_vertices(); ++b)
        if (a != b)
          CHECK(d.adjacent(a, b) == (g.adjacent(a / nh, b / nh) || h.adjacent(a % nh, b % nh)));
  }
}

TEST_CASE("graph6 examples") {
  Graph star = parse_graph6("D?{");
  CHECK(star.num_vertices() == 5);
  CHECK(star == Graph(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}}));
  CHECK(parse_graph6("A?") == Graph(2));
  CHECK(parse_graph6("A_") == complete(2));
  CHECK(parse_graph6(">>graph6<<A_\n") == complete(2));
  CHECK(encode_graph6(complete(2)) == "A_");
}

TEST_CASE("graph6 agrees with the reference decoder on the corpus") {
  std::ifstream in(CHROMABOUND_TEST_DATA "/graph6_reference.tsv");
  REQUIRE(in);
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string g6, n_text, edge_text;
    std::getline(ls, g6, '\t');
    std::getline(ls, n_text, '\t');
    std::getline(ls, edge_text);
    std::vector<Edge> edges;
    std::istringstream es(edge_text);
    for (std::string tok; std::getline(es, tok, ',');) {
      auto dash = tok.find('-');
      edges.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    Graph expected(std::stoi(n_text), edges);
    Graph got = parse_graph6(g6);
    CHECK(got == expected);
    CHECK(encode_graph6(got) == g6);
    ++rows;
  }
  CHECK(rows > 1200);
}

TEST_CASE("graph6 round trip on generated graphs") {
  std::mt19937 rng(3);
  for (int n : {0, 1, 2, 7, 62, 63, 64, 130}) {
    Graph g = random_graph(n, 0.3, rng);
    CHECK(parse_graph6(encode_graph6(g)) == g);
  }
  Graph big = random_graph(300, 0.05, rng);
  CHECK(parse_graph6(encode_graph6(big)) == big);
  for (const char* spec : {"cycle:5*complete:3", "kneser:7:3", "cycle:7[complete:2]"})
    CHECK(parse_graph6(encode_graph6(generate(spec))) == generate(spec));
}

TEST_CASE("graph6 errors carry byte offsets") {
  auto offset_of = [](std::string_view text) -> long {
    try {
      parse_graph6(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("D?") == 2);        // truncated bit stream
  CHECK(offset_of("D?{?") == 3);      // trailing data
  CHECK(offset_of("D?\x01") == 2);    // character below 63
  CHECK(offset_of("~?") == 2);        // truncated long header
  CHECK(offset_of("Bx") == 1);        // n=3 uses 3 bits; "x" sets a padding bit
  CHECK(offset_of("A_ ") >= 0);
}

TEST_CASE("dimacs") {
  CHECK(parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n") == complete(3));
  CHECK(parse_dimacs("c two isolated\np edge 2 0\n") == Graph(2));
  CHECK(parse_dimacs("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n") == cycle(5));
  CHECK(parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n") == Graph(3, std::vector<Edge>{{0, 1}}));

  std::vector<std::string> warnings;
  Graph g = parse_dimacs("p edge 3 5\ne 1 2\n", &warnings);
  CHECK(g.num_edges() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("declares 5") != std::string::npos);

  CHECK_THROWS_AS(parse_dimacs("e 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("c nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p edge 2 1\ne 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p edge 2 1\nx 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p edge 2 1\np edge 2 1\n"), ParseError);

  Graph pet = kneser(5, 2);
  CHECK(parse_dimacs(encode_dimacs(pet)) == pet);
}

TEST_CASE("json graph export") {
  Graph g = cycle(4);
  auto j = graph_to_json(g);
  CHECK(j["n"] == 4);
  CHECK(j["edges"].size() == 4);
  CHECK(j["name"] == "cycle:4");
  CHECK(graph_from_json(j) == g);
}

TEST_CASE("maximal cliques and independent sets") {
  auto c5 = maximal_cliques(cycle(5));
  CHECK(c5 == brute_maximal_cliques(cycle(5)));
  CHECK(c5.size() == 5);
  for (const auto& s : c5) CHECK(s.size() == 2);
  CHECK(maximal_cliques(complete(4)) == std::vector<VertexSet>{{0, 1, 2, 3}});
  CHECK(maximal_cliques(Graph(3)) == std::vector<VertexSet>{{0}, {1}, {2}});

  auto is5 = maximal_independent_sets(cycle(5));
  CHECK(is5.size() == 5);
  for (const auto& s : is5) CHECK(s.size() == 2);
  CHECK(maximal_independent_sets(complete(3)).size() == 3);
  CHECK(maximal_independent_sets(Graph(6)) == std::vector<VertexSet>{{0, 1, 2, 3, 4, 5}});

  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    Graph g = random_graph(1 + t % 10, 0.5, rng);
    auto got = maximal_cliques(g);
    CHECK(got == brute_maximal_cliques(g));
    for (std::size_t a = 0; a < got.size(); ++a) {
      CHECK(is_clique(g, got[a]));
      CHECK(std::is_sorted(got[a].begin(), got[a].end()));
      for (std::size_t b = 0; b < got.size(); ++b)
        if (a != b) CHECK_FALSE(std::includes(got[b].begin(), got[b].end(), got[a].begin(), got[a].end()));
    }
  }
  CHECK_THROWS_AS(maximal_cliques(cycle(9), 3), LimitExceeded);
}

TEST_CASE("all cliques") {
  auto k3 = all_cliques(complete(3));
  CHECK(k3.size() == 7);
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_graph(1 + t % 8, 0.5, rng);
    const int n = g.num_vertices();
    std::size_t expected = 0;
    for (unsigned m = 1; m < (1u << n); ++m) expected += is_clique(g, members(m, n));
    CHECK(all_cliques(g).size() == expected);
  }
}

TEST_CASE("chromatic, clique and independence numbers") {
  CHECK(chromatic_number(cycle(5)) == 3);
  CHECK(clique_number(cycle(5)) == 2);
  CHECK(independence_number(cycle(5)) == 2);
  for (int n = 1; n <= 6; ++n) {
    CHECK(chromatic_number(complete(n)) == n);
    CHECK(clique_number(complete(n)) == n);
  }
  CHECK(chromatic_number(kneser(5, 2)) == 3);
  // Every independent set of G * K3 sits inside one K3 layer, so each of the
  // three C5 layers needs its own 3 colours. The lexicographic product only
  // forbids same-layer pairs over equal C5 vertices and reaches 8 = ceil(15/2).
  CHECK(chromatic_number(disjunctive_product(cycle(5), complete(3))) == 9);
  CHECK(chromatic_number(lexicographic_product(cycle(5), complete(3))) == 8);
  CHECK(is_proper_coloring(cycle(5), optimal_coloring(cycle(5))));
  CHECK_THROWS_AS(chromatic_number(cycle(25)), LimitExceeded);
  CHECK(chromatic_number(cycle(25), 30) == 3);

  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    Graph g = random_graph(1 + t % 8, 0.45, rng);
    const int chi = chromatic_number(g);
    CHECK(chi == brute_chromatic(g));
    CHECK(clique_number(g) <= chi);
    CHECK(independence_number(g) == clique_number(complement(g)));
  }
}

TEST_CASE("connected corpus holds the expected counts") {
  std::ifstream in(CHROMABOUND_DATA_DIR "/connected_le6.g6");
  REQUIRE(in);
  int by_n[7] = {0};
  for (std::string line; std::getline(in, line);) {
    Graph g = parse_graph6(line);
    CHECK(is_connected(g));
    ++by_n[g.num_vertices()];
  }
  CHECK(by_n[1] == 1);
  CHECK(by_n[2] == 1);
  CHECK(by_n[3] == 2);
  CHECK(by_n[4] == 6);
  CHECK(by_n[5] == 21);
  CHECK(by_n[6] == 112);
}
