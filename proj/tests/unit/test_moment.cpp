#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "chromabound/errors.hpp"
#include "chromabound/moment.hpp"
#include "chromabound/sdpa.hpp"
#include "doctest.h"

using namespace chromabound;

namespace {

// Two commuting families realized on R^a (x) R^b with a real unit state.
struct TensorStrategy {
  int n, c, a, b;
  std::vector<std::vector<Eigen::MatrixXd>> E, F;  // [v][i], full-space operators
  Eigen::VectorXd psi;

  Eigen::MatrixXd op(const Generator& g) const {
    return g.family == Family::E ? E[g.vertex][g.outcome] : F[g.vertex][g.outcome];
  }
  Eigen::MatrixXd word(const Word& w) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a * b, a * b);
    if (w.zero) return 0 * m;
    for (const auto& g : w.letters) m = m * op(g);
    return m;
  }
  double moment(const Word& w) const { return psi.dot(word(w) * psi); }
  Correlation correlation() const {
    Correlation p(n, c);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < c; ++i)
        for (int w = 0; w < n; ++w)
          for (int j = 0; j < c; ++j) p(v, i, w, j) = psi.dot(E[v][i] * F[w][j] * psi);
    return p;
  }
};

Eigen::MatrixXd kron(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  Eigen::MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (int r = 0; r < x.rows(); ++r)
    for (int s = 0; s < x.cols(); ++s) out.block(r * y.rows(), s * y.cols(), y.rows(), y.cols()) = x(r, s) * y;
  return out;
}

// Projective measurement with c outcomes: a random orthonormal basis split into c groups.
std::vector<Eigen::MatrixXd> random_pvm(int dim, int c, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int s = 0; s < dim; ++s) g(r, s) = gauss(rng);
  Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  std::uniform_int_distribution<int> pick(0, c - 1);
  std::vector<Eigen::MatrixXd> out(c, Eigen::MatrixXd::Zero(dim, dim));
  for (int k = 0; k < dim; ++k) out[pick(rng)] += q.col(k) * q.col(k).transpose();
  return out;
}

TensorStrategy random_strategy(int n, int c, int a, int b, std::mt19937& rng) {
  TensorStrategy t{n, c, a, b, {}, {}, {}};
  const Eigen::MatrixXd Ia = Eigen::MatrixXd::Identity(a, a), Ib = Eigen::MatrixXd::Identity(b, b);
  for (int v = 0; v < n; ++v) {
    auto pa = random_pvm(a, c, rng), pb = random_pvm(b, c, rng);
    t.E.emplace_back();
    t.F.emplace_back();
    for (int i = 0; i < c; ++i) {
      t.E[v].push_back(kron(pa[i], Ib));
      t.F[v].push_back(kron(Ia, pb[i]));
    }
  }
  std::normal_distribution<double> gauss;
  t.psi.resize(a * b);
  for (int k = 0; k < a * b; ++k) t.psi[k] = gauss(rng);
  t.psi.normalize();
  return t;
}

// Deterministic strategy: Alice answers colour[v], Bob answers colour2[w].
TensorStrategy deterministic(int c, const std::vector<int>& alice, const std::vector<int>& bob) {
  const int n = static_cast<int>(alice.size());
  TensorStrategy t{n, c, 1, 1, {}, {}, Eigen::VectorXd::Ones(1)};
  for (int v = 0; v < n; ++v) {
    t.E.emplace_back();
    t.F.emplace_back();
    for (int i = 0; i < c; ++i) {
      t.E[v].push_back(Eigen::MatrixXd::Constant(1, 1, alice[v] == i ? 1.0 : 0.0));
      t.F[v].push_back(Eigen::MatrixXd::Constant(1, 1, bob[v] == i ? 1.0 : 0.0));
    }
  }
  return t;
}

// Checks that the strategy's moments form a feasible point of the relaxation
// with the right objective value.
void check_strategy_is_feasible(const Graph& g, const MomentSdp& m, const TensorStrategy& t) {
  std::vector<double> y(m.variables.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = t.moment(m.variables[k]);

  const Eigen::MatrixXd M = m.moment_matrix(y);
  const int d = m.order();
  Eigen::MatrixXd vecs(t.a * t.b, d);
  for (int r = 0; r < d; ++r) vecs.col(r) = t.word(m.index[r]) * t.psi;
  CHECK((M - vecs.transpose() * vecs).cwiseAbs().maxCoeff() < 1e-10);

  const Correlation p = t.correlation();
  for (int v = 0; v < m.n; ++v)
    for (int i = 0; i < m.c; ++i)
      for (int w = 0; w < m.n; ++w)
        for (int j = 0; j < m.c; ++j) CHECK(m.correlation_entry(v, i, w, j).evaluate(y) == doctest::Approx(p(v, i, w, j)).epsilon(1e-10));
  const double L = eval_graph_functional(g, m.c, p);
  CHECK(m.objective.evaluate(y) == doctest::Approx(L).epsilon(1e-10));

  // Dual slack C - sum y_k A_k reproduces the moment matrix and is PSD.
  BlockMatrix Z = to_block_matrix(m.problem, m.problem.objective);
  double by = 0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    BlockMatrix Ak = to_block_matrix(m.problem, m.problem.constraints[k]);
    for (std::size_t blk = 0; blk < Z.blocks.size(); ++blk) Z.blocks[blk] -= y[k] * Ak.blocks[blk];
    by += m.problem.rhs[k] * y[k];
  }
  CHECK((dense_block(m.problem, Z, 0) - M).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(min_eigenvalue(m.problem, Z) > -1e-10);
  CHECK(m.objective.constant - by == doctest::Approx(L).epsilon(1e-10));
}

// Smallest L over deterministic (hence all local) strategies.
double local_minimum(const Graph& g, int c) {
  const int n = g.num_vertices();
  int total = 1;
  for (int k = 0; k < 2 * n; ++k) total *= c;
  double best = 1e300;
  for (int code = 0; code < total; ++code) {
    std::vector<int> alice(n), bob(n);
    int x = code;
    for (int v = 0; v < n; ++v, x /= c) alice[v] = x % c;
    for (int v = 0; v < n; ++v, x /= c) bob[v] = x % c;
    best = std::min(best, eval_graph_functional(g, c, deterministic(c, alice, bob).correlation()));
  }
  return best;
}

}  // namespace

TEST_CASE("graph functional examples") {
  const Graph c5 = cycle(5);
  Correlation uniform(5, 3);
  std::fill(uniform.p.begin(), uniform.p.end(), 1.0 / 9.0);
  CHECK(eval_graph_functional(c5, 3, uniform) == doctest::Approx(60.0 / 9.0));

  const std::vector<int> colouring{0, 1, 0, 1, 2};
  CHECK(eval_graph_functional(c5, 3, deterministic(3, colouring, colouring).correlation()) == 0.0);

  Correlation single(5, 3);
  single(2, 0, 2, 1) = 1e-3;
  CHECK(eval_graph_functional(c5, 3, single) == doctest::Approx(1e-3));
  Correlation edge(5, 3);
  edge(0, 2, 1, 2) = 0.25;
  CHECK(eval_graph_functional(c5, 3, edge) == doctest::Approx(0.25));
  Correlation off_edge(5, 3);
  off_edge(0, 2, 2, 2) = 0.25;
  CHECK(eval_graph_functional(c5, 3, off_edge) == 0.0);

  CHECK_THROWS_AS(eval_graph_functional(c5, 2, uniform), std::invalid_argument);
  CHECK_THROWS_AS(eval_graph_functional(cycle(4), 3, uniform), std::invalid_argument);
  Correlation broken = uniform;
  broken.p.pop_back();
  CHECK_THROWS_AS(eval_graph_functional(c5, 3, broken), std::invalid_argument);
}

TEST_CASE("moment SDP structure") {
  for (auto [g, c, N] : {std::tuple{complete(2), 2, 1}, {complete(3), 3, 1}, {cycle(5), 2, 2}, {path(3), 3, 2}}) {
    MomentSdp m = build_moment_sdp(g, c, N);
    CAPTURE(m.order());
    CHECK(m.order() == static_cast<int>(enumerate_words(g.num_vertices(), c, N, {2000, c - 1}).size()));
    CHECK(m.index[0].is_one());
    CHECK(m.entry(0, 0) == MomentSdp::kPinnedOne);
    CHECK_NOTHROW(m.problem.validate());
    CHECK(m.problem.num_constraints() == static_cast<int>(m.variables.size()));
    CHECK(m.problem.block_dim(0) == m.order());
    CHECK(m.has_nonnegativity_block == (N == 1));

    std::vector<int> uses(m.variables.size(), 0);
    for (int r = 0; r < m.order(); ++r)
      for (int s = 0; s < m.order(); ++s) {
        const int k = m.entry(r, s);
        CHECK(k == m.entry(s, r));
        CHECK(k == m.variable_of(multiply(adjoint(m.index[s]), m.index[r])));
        if (k >= 0) ++uses[k];
      }
    CHECK(std::all_of(uses.begin(), uses.end(), [](int u) { return u > 0; }));
    for (std::size_t k = 0; k < m.variables.size(); ++k) {
      CHECK(m.variable_of(m.variables[k]) == static_cast<int>(k));
      CHECK(m.variable_of(adjoint(m.variables[k])) == static_cast<int>(k));
    }
  }
  // Full index set versus the reduced one used for the matrix.
  CHECK(enumerate_words(2, 2, 1).size() == 9);
  CHECK(build_moment_sdp(complete(2), 2, 1).order() == 5);

  CHECK(build_moment_sdp(complete(3), 2, 2, {2000, true}).has_nonnegativity_block);
  CHECK(!build_moment_sdp(complete(3), 2, 1, {2000, false}).has_nonnegativity_block);
}

TEST_CASE("moment SDP argument checks") {
  CHECK_THROWS_AS(build_moment_sdp(complete(3), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_moment_sdp(complete(3), 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_moment_sdp(cycle(5), 4, 2, {100, std::nullopt}), LimitExceeded);
  MomentSdp m = build_moment_sdp(complete(2), 2, 1);
  CHECK_THROWS_AS(m.variable_of(reduce({e(0, 0), e(1, 0), f(0, 0)})), std::out_of_range);
}

TEST_CASE("classical colourings are feasible moment points") {
  const Graph c5 = cycle(5);
  for (int N : {1, 2}) {
    MomentSdp m = build_moment_sdp(c5, 3, N);
    check_strategy_is_feasible(c5, m, deterministic(3, {0, 1, 0, 1, 2}, {0, 1, 0, 1, 2}));
    check_strategy_is_feasible(c5, m, deterministic(3, {2, 2, 1, 0, 1}, {0, 1, 2, 2, 0}));
  }
  MomentSdp k3 = build_moment_sdp(complete(3), 2, 2);
  check_strategy_is_feasible(complete(3), k3, deterministic(2, {0, 1, 1}, {1, 0, 0}));
}

TEST_CASE("commuting projection strategies are feasible moment points") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = trial % 2 ? cycle(4) : complete(3);
    const int c = 2 + trial % 2;
    const int N = trial < 3 ? 1 : 2;
    CAPTURE(trial);
    MomentSdp m = build_moment_sdp(g, c, N);
    check_strategy_is_feasible(g, m, random_strategy(g.num_vertices(), c, 3, 2, rng));
  }
}

TEST_CASE("level bounds on small graphs") {
  SUBCASE("single colour") {
    QcResult k1 = qc_level_bound(complete(1), 1, 1);
    CHECK(k1.solved());
    CHECK(std::abs(k1.min_value) < 1e-8);
    CHECK(k1.verdict == QcVerdict::ConsistentWithColouring);
    QcResult k2 = qc_level_bound(complete(2), 1, 2);
    CHECK(k2.min_value == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(k2.verdict == QcVerdict::CertifiedNoColouring);
  }
  SUBCASE("triangle with three colours") {
    QcResult r = qc_level_bound(complete(3), 3, 1);
    CHECK(r.solved());
    CHECK(std::abs(r.min_value) <= 1e-6);
    CHECK(r.verdict == QcVerdict::ConsistentWithColouring);
  }
  SUBCASE("triangle with two colours") {
    const double local = local_minimum(complete(3), 2);
    CHECK(local > 1e-6);
    QcResult r = qc_level_bound(complete(3), 2, 2);
    CHECK(r.solved());
    CHECK(r.min_value > 1e-6);
    CHECK(r.min_value <= local + 1e-6);
    CHECK(r.verdict == QcVerdict::CertifiedNoColouring);
    MESSAGE("K3, c=2, N=2: " << r.min_value << " (local minimum " << local << ")");
  }
  SUBCASE("monotone in the level and below the local minimum") {
    for (auto [g, c] : {std::pair{complete(3), 2}, {cycle(5), 2}, {complete(4), 2}, {cycle(4), 2}, {path(4), 2}}) {
      const double local = local_minimum(g, c);
      QcResult r1 = qc_level_bound(g, c, 1);
      QcResult r2 = qc_level_bound(g, c, 2);
      REQUIRE(r1.solved());
      REQUIRE(r2.solved());
      CHECK(r1.min_value >= -1e-6);
      CHECK(r2.min_value >= r1.min_value - 1e-6);
      CHECK(r2.min_value <= local + 1e-6);
      MESSAGE(g.name() << " c=" << c << ": " << r1.min_value << " -> " << r2.min_value << " (local " << local << ")");
    }
  }
}

TEST_CASE("optimal moment matrix is consistent with the reported value") {
  MomentSdp m = build_moment_sdp(cycle(5), 2, 2);
  SdpSolution s = solve(m.problem);
  REQUIRE(s.status == SdpStatus::Optimal);
  const std::vector<double> y(s.y.data(), s.y.data() + s.y.size());
  const Eigen::MatrixXd M = m.moment_matrix(y);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff() > -1e-7);
  CHECK(m.objective.evaluate(y) == doctest::Approx(m.objective.constant - s.dual_value).epsilon(1e-9));
  // Level 2 implies nonnegative correlations.
  for (int v = 0; v < 5; ++v)
    for (int w = 0; w < 5; ++w)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(m.correlation_entry(v, i, w, j).evaluate(y) > -1e-7);
}

TEST_CASE("moment SDP external interfaces") {
  MomentSdp m = build_moment_sdp(complete(3), 2, 1);
  nlohmann::json j = m.index_json();
  CHECK(j["order"] == m.order());
  CHECK(j["index"].size() == static_cast<std::size_t>(m.order()));
  CHECK(j["index"][0] == "1");
  CHECK(j["variables"].size() == m.variables.size());
  CHECK(j["objective"]["constant"].get<double>() == doctest::Approx(m.objective.constant));

  SdpProblem back = parse_sdpa_sparse(export_sdpa_sparse(m.problem, "K3 c=2 N=1"));
  CHECK(back.num_constraints() == m.problem.num_constraints());
  CHECK(back.blocks == m.problem.blocks);
  SdpSolution a = solve(m.problem), b = solve(back);
  CHECK(a.dual_value == doctest::Approx(b.dual_value).epsilon(1e-7));
}
