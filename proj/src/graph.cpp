#include "chromabound/graph.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace chromabound {

Graph::Graph(int n, std::string name) : n_(n), name_(std::move(name)) {
  if (n < 0) throw std::invalid_argument("graph order must be non-negative");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

Graph::Graph(int n, const std::vector<Edge>& edges, std::string name)
    : Graph(n, std::move(name)) {
  for (auto [v, w] : edges) {
    if (v < 0 || w < 0 || v >= n || w >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (v == w) throw std::invalid_argument("self-loops are not allowed");
    auto& a = adj_[static_cast<std::size_t>(v) * n + w];
    if (!a) {
      a = 1;
      adj_[static_cast<std::size_t>(w) * n + v] = 1;
      ++num_edges_;
    }
  }
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w)
    if (adjacent(v, w)) out.push_back(w);
  return out;
}

int Graph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += adjacent(v, w);
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (int v = 0; v < n_; ++v)
    for (int w = v + 1; w < n_; ++w)
      if (adjacent(v, w)) out.emplace_back(v, w);
  return out;
}

Graph Graph::with_name(std::string name) const {
  Graph g = *this;
  g.name_ = std::move(name);
  return g;
}

Graph empty_graph(int n) {
  if (n < 0) throw std::invalid_argument("empty: n must be >= 0");
  return Graph(n, "empty:" + std::to_string(n));
}

Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w) e.emplace_back(v, w);
  return Graph(n, e, "complete:" + std::to_string(n));
}

Graph cycle(int k) {
  if (k < 3) throw std::invalid_argument("cycle: k must be >= 3");
  std::vector<Edge> e;
  for (int v = 0; v < k; ++v) e.emplace_back(v, (v + 1) % k);
  return Graph(k, e, "cycle:" + std::to_string(k));
}

Graph path(int n) {
  if (n < 1) throw std::invalid_argument("path: n must be >= 1");
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e, "path:" + std::to_string(n));
}

Graph kneser(int a, int b) {
  if (b < 1 || a < 2 * b)
    throw std::invalid_argument("kneser: need b >= 1 and a >= 2b");
  if (a > 30) throw std::invalid_argument("kneser: a must be <= 30");
  std::vector<std::uint32_t> sets;
  for (std::uint32_t m = 0; m < (1u << a); ++m)
    if (__builtin_popcount(m) == b) sets.push_back(m);
  // Order b-subsets lexicographically by their sorted element lists.
  auto elems = [a](std::uint32_t m) {
    std::vector<int> out;
    for (int i = 0; i < a; ++i)
      if (m >> i & 1u) out.push_back(i);
    return out;
  };
  std::sort(sets.begin(), sets.end(),
            [&](std::uint32_t x, std::uint32_t y) { return elems(x) < elems(y); });
  const int n = static_cast<int>(sets.size());
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if ((sets[v] & sets[w]) == 0) e.emplace_back(v, w);
  return Graph(n, e, "kneser:" + std::to_string(a) + ":" + std::to_string(b));
}

Graph complement(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (!g.adjacent(v, w)) e.emplace_back(v, w);
  return Graph(n, e, g.name().empty() ? std::string{} : "co(" + g.name() + ")");
}

namespace {

template <typename Rule>
Graph product(const Graph& g, const Graph& h, Rule adjacent, std::string name) {
  const int ng = g.num_vertices(), nh = h.num_vertices();
  std::vector<Edge> e;
  for (int a = 0; a < ng * nh; ++a)
    for (int b = a + 1; b < ng * nh; ++b)
      if (adjacent(a / nh, a % nh, b / nh, b % nh)) e.emplace_back(a, b);
  return Graph(ng * nh, e, std::move(name));
}

}  // namespace

Graph disjunctive_product(const Graph& g, const Graph& h) {
  return product(
      g, h,
      [&](int g1, int h1, int g2, int h2) {
        return g.adjacent(g1, g2) || h.adjacent(h1, h2);
      },
      g.name() + "*" + h.name());
}

Graph lexicographic_product(const Graph& g, const Graph& h) {
  return product(
      g, h,
      [&](int g1, int h1, int g2, int h2) {
        return g.adjacent(g1, g2) || (g1 == g2 && h.adjacent(h1, h2));
      },
      g.name() + "[" + h.name() + "]");
}

bool is_connected(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (g.adjacent(v, w) && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

bool is_clique(const Graph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.adjacent(s[i], s[j])) return false;
  return true;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.adjacent(s[i], s[j])) return false;
  return true;
}

namespace {

// Recursive-descent parser for generator expressions:
//   expr := term ( '*' term )*
//   term := atom ( '[' expr ']' )*
//   atom := name ( ':' int )* | '(' expr ')'
class GenParser {
 public:
  explicit GenParser(const std::string& s) : s_(s) {}

  Graph parse() {
    Graph g = expr();
    if (pos_ != s_.size()) fail("unexpected character");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("generator '" + s_ + "': " + what + " at position " +
                                std::to_string(pos_));
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Graph expr() {
    Graph g = term();
    while (eat('*')) g = disjunctive_product(g, term());
    return g;
  }

  Graph term() {
    Graph g = atom();
    while (eat('[')) {
      Graph h = expr();
      if (!eat(']')) fail("expected ']'");
      g = lexicographic_product(g, h);
    }
    return g;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  Graph atom() {
    if (eat('(')) {
      Graph g = expr();
      if (!eat(')')) fail("expected ')'");
      return g;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    std::vector<int> args;
    while (eat(':')) args.push_back(integer());
    auto want = [&](std::size_t k) {
      if (args.size() != k)
        fail(name + " takes " + std::to_string(k) + " argument(s)");
    };
    if (name == "cycle") { want(1); return cycle(args[0]); }
    if (name == "complete") { want(1); return complete(args[0]); }
    if (name == "empty") { want(1); return empty_graph(args[0]); }
    if (name == "path") { want(1); return path(args[0]); }
    if (name == "kneser") { want(2); return kneser(args[0], args[1]); }
    if (name == "petersen") { want(0); return kneser(5, 2).with_name("petersen"); }
    fail("unknown generator '" + name + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph generate(const std::string& spec) {
  Graph g = GenParser(spec).parse();
  return g.with_name(spec);
}

}  // namespace chromabound
