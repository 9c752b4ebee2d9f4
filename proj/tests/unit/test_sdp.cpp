#include <cmath>
#include <random>

#include "chromabound/errors.hpp"
#include "chromabound/schur.hpp"
#include "chromabound/sdp.hpp"
#include "chromabound/sdpa.hpp"
#include "doctest.h"
#include "planted.hpp"

using namespace chromabound;

namespace {

// max <J, X>  s.t.  Tr X = 1,  X_vw = 0 on edges, as a minimization of <-J, X>.
SdpProblem theta_problem(int n, const std::vector<std::pair<int, int>>& edges) {
  SdpProblem p;
  p.blocks = {n};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.objective.push_back({0, i, j, -1.0});
  SparseBlockMatrix trace;
  for (int i = 0; i < n; ++i) trace.push_back({0, i, i, 1.0});
  p.constraints.push_back(trace);
  p.rhs.push_back(1.0);
  for (auto [v, w] : edges) {
    p.constraints.push_back({{0, std::min(v, w), std::max(v, w), 1.0}});
    p.rhs.push_back(0.0);
  }
  return p;
}

// Oracle for n <= 3: random feasible points never beat lambda_max(J) = n on
// the empty graph; on K_n feasibility forces X diagonal so <J,X> = Tr X = 1.
double random_feasible_theta(int n, bool complete_graph, std::mt19937& rng) {
  std::normal_distribution<double> g;
  double best = 0;
  for (int t = 0; t < 2000; ++t) {
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = g(rng);
    Eigen::MatrixXd X = B * B.transpose();
    if (complete_graph) X = Eigen::MatrixXd(X.diagonal().asDiagonal());
    X /= X.trace();
    best = std::max(best, X.sum());
  }
  return best;
}

}  // namespace

TEST_CASE("scalar LP through a diagonal slack block") {
  // min x  s.t.  x - s = 1,  x, s >= 0
  SdpProblem p;
  p.blocks = {-2};
  p.objective = {{0, 0, 0, 1.0}};
  p.constraints = {{{0, 0, 0, 1.0}, {0, 1, 1, -1.0}}};
  p.rhs = {1.0};
  auto s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primal_value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(s.gap <= 1e-8);
}

TEST_CASE("forced diagonal 2x2 block") {
  SdpProblem p;
  p.blocks = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.constraints = {{{0, 0, 0, 1.0}}, {{0, 1, 1, 1.0}}};
  p.rhs = {1.0, 1.0};
  auto s = solve(p);
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.primal_value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK((s.X.blocks[0] - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-6);
  CHECK(min_eigenvalue(p, s.X) >= -1e-8);
}

TEST_CASE("theta of empty and complete graphs") {
  std::mt19937 rng(1);
  for (int n = 1; n <= 5; ++n) {
    auto empty = solve(theta_problem(n, {}));
    REQUIRE(empty.status == SdpStatus::Optimal);
    CHECK(-empty.primal_value == doctest::Approx(n).epsilon(1e-7));

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
      for (int w = v + 1; w < n; ++w) edges.emplace_back(v, w);
    auto full = solve(theta_problem(n, edges));
    REQUIRE(full.status == SdpStatus::Optimal);
    CHECK(-full.primal_value == doctest::Approx(1.0).epsilon(1e-7));

    if (n <= 3) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd::Ones(n, n));
      CHECK(es.eigenvalues()(n - 1) == doctest::Approx(n));
      CHECK(random_feasible_theta(n, false, rng) <= es.eigenvalues()(n - 1) + 1e-9);
      CHECK(random_feasible_theta(n, true, rng) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("LP examples") {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  auto s = solve_lp(Eigen::Vector2d(1, 1), A, Eigen::VectorXd::Constant(1, 1.0));
  REQUIRE(s.status == SdpStatus::Optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-7));

  // Fractional colouring of K3: three singleton independent sets, one slack each.
  Eigen::MatrixXd F(3, 6);
  F << 1, 0, 0, -1, 0, 0,
       0, 1, 0, 0, -1, 0,
       0, 0, 1, 0, 0, -1;
  Eigen::VectorXd c(6);
  c << 1, 1, 1, 0, 0, 0;
  auto k3 = solve_lp(c, F, Eigen::Vector3d(1, 1, 1));
  REQUIRE(k3.status == SdpStatus::Optimal);
  CHECK(k3.value == doctest::Approx(3.0).epsilon(1e-7));

  Eigen::MatrixXd B(1, 1);
  B << 1;
  auto bad = solve_lp(Eigen::VectorXd::Constant(1, 1.0), B, Eigen::VectorXd::Constant(1, -1.0));
  CHECK(bad.status == SdpStatus::PrimalInfeasible);
}

TEST_CASE("unbounded problem is reported dual infeasible") {
  // min -x  s.t.  x - s = 0 has no lower bound.
  SdpProblem p;
  p.blocks = {-2};
  p.objective = {{0, 0, 0, -1.0}};
  p.constraints = {{{0, 0, 0, 1.0}, {0, 1, 1, -1.0}}};
  p.rhs = {0.0};
  CHECK(solve(p).status == SdpStatus::DualInfeasible);
}

TEST_CASE("structural validation rejects bad problems") {
  SdpProblem p;
  p.blocks = {2};
  p.constraints = {{{0, 1, 0, 1.0}}};
  p.rhs = {1.0};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p.constraints = {{{0, 0, 2, 1.0}}};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p.constraints = {{{1, 0, 0, 1.0}}};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p.constraints = {{{0, 0, 0, 1.0}}};
  p.rhs = {NAN};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  p.rhs = {};
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
  SdpProblem d;
  d.blocks = {-2};
  d.constraints = {{{0, 0, 1, 1.0}}};
  d.rhs = {1.0};
  CHECK_THROWS_AS(solve(d), std::invalid_argument);
}

TEST_CASE("no constraints") {
  SdpProblem p;
  p.blocks = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 2.0}};
  auto s = solve(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(std::abs(s.primal_value) < 1e-7);
}

TEST_CASE("planted random SDPs are recovered") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 20; ++t) {
    auto inst = testing::planted_sdp(rng, t);
    auto s = solve(inst.problem);
    INFO("instance " << t);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(std::abs(s.primal_value - inst.optimum) <= 1e-6 * (1 + std::abs(inst.optimum)));
    CHECK(s.dual_value <= s.primal_value + 10 * 1e-8 * (1 + std::abs(s.primal_value)));
    CHECK(min_eigenvalue(inst.problem, s.X) >= -1e-8);
  }
}

TEST_CASE("row scaling leaves the optimum unchanged") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> scale(0.01, 100);
  for (int t = 0; t < 5; ++t) {
    auto inst = testing::planted_sdp(rng, t);
    SdpProblem scaled = inst.problem;
    for (int i = 0; i < scaled.num_constraints(); ++i) {
      const double f = scale(rng);
      for (auto& e : scaled.constraints[i]) e.value *= f;
      scaled.rhs[i] *= f;
    }
    auto a = solve(inst.problem), b = solve(scaled);
    REQUIRE(a.status == SdpStatus::Optimal);
    REQUIRE(b.status == SdpStatus::Optimal);
    CHECK(std::abs(a.primal_value - b.primal_value) <= 1e-6);
  }
}

TEST_CASE("ADMM agrees with the interior point method") {
  std::mt19937 rng(8);
  SolveOptions admm;
  admm.method = SdpMethod::Admm;
  admm.tol = 1e-7;
  admm.admm_tol = 1e-7;
  for (int t = 0; t < 5; ++t) {
    auto inst = testing::planted_sdp(rng, t);
    auto s = solve(inst.problem, admm);
    INFO("instance " << t << " iterations " << s.iterations);
    CHECK(s.method_used == SdpMethod::Admm);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(std::abs(s.primal_value - inst.optimum) <= 1e-5 * (1 + std::abs(inst.optimum)));
  }
}

TEST_CASE("parallel Schur assembly matches the serial reference") {
  std::mt19937 rng(31);
  for (int t = 0; t < 6; ++t) {
    auto inst = testing::planted_sdp(rng, t);
    const auto& p = inst.problem;
    // Any psd pair works; use the planted optimum perturbed to be definite.
    BlockMatrix X = inst.X, W = inst.Z;
    for (std::size_t k = 0; k < X.blocks.size(); ++k) {
      if (p.is_diagonal(static_cast<int>(k))) {
        X.blocks[k].array() += 0.5;
        W.blocks[k].array() += 0.25;
      } else {
        X.blocks[k].diagonal().array() += 0.5;
        W.blocks[k].diagonal().array() += 0.25;
      }
    }
    SchurAssembler assembler(p);
    Eigen::MatrixXd M;
    assembler.assemble(X, W, M);
    Eigen::MatrixXd R = schur_complement_reference(p, X, W);
    CHECK((M - R).norm() <= 1e-10 * (1 + R.norm()));
    CHECK((M - M.transpose()).norm() <= 1e-12 * (1 + M.norm()));
  }
}

TEST_CASE("SDPA export golden text") {
  SdpProblem p;
  p.blocks = {2, -1};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.constraints = {{{0, 0, 0, 1.0}, {0, 0, 1, 0.5}, {1, 0, 0, -1.0}}};
  p.rhs = {2.0};
  const std::string golden =
      "1 = mDIM\n"
      "2 = nBLOCK\n"
      "2 -1 = bLOCKsTRUCT\n"
      "2\n"
      "0 1 1 1 -1\n"
      "0 1 2 2 -1\n"
      "1 1 1 1 1\n"
      "1 1 1 2 0.5\n"
      "1 2 1 1 -1\n";
  CHECK(export_sdpa_sparse(p) == golden);

  SdpProblem none;
  none.blocks = {1};
  CHECK(export_sdpa_sparse(none).rfind("0 = mDIM\n1 = nBLOCK\n1 = bLOCKsTRUCT\n", 0) == 0);

  CHECK(export_sdpa_sparse(p, "toy").rfind("\" toy\n", 0) == 0);
}

TEST_CASE("SDPA round trip is bit exact and solves identically") {
  std::mt19937 rng(77);
  for (int t = 0; t < 5; ++t) {
    auto inst = testing::planted_sdp(rng, t);
    SdpProblem back = parse_sdpa_sparse(export_sdpa_sparse(inst.problem));
    REQUIRE(back.blocks == inst.problem.blocks);
    REQUIRE(back.rhs == inst.problem.rhs);
    REQUIRE(back.num_constraints() == inst.problem.num_constraints());
    for (int i = 0; i < back.num_constraints(); ++i) {
      const auto& a = back.constraints[i];
      const auto& b = inst.problem.constraints[i];
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].block == b[k].block);
        CHECK(a[k].row == b[k].row);
        CHECK(a[k].col == b[k].col);
        CHECK(a[k].value == b[k].value);
      }
    }
    auto s1 = solve(inst.problem), s2 = solve(back);
    CHECK(std::abs(s1.primal_value - s2.primal_value) <= 1e-9);
  }
}

TEST_CASE("SDPA reader errors") {
  CHECK_THROWS_AS(parse_sdpa_sparse(""), ParseError);
  CHECK_THROWS_AS(parse_sdpa_sparse("1\n1\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_sdpa_sparse("1\n1\n2\n1.0\n2 1 1 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_sdpa_sparse("1\n1\n-2\n1.0\n1 1 1 2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_sdpa_sparse("1\n1\n2\nabc\n"), ParseError);
  auto p = parse_sdpa_sparse("* comment\n1\n1\n{2}\n{1.5}\n1 1 2 1 3\n");
  CHECK(p.constraints[0][0].row == 0);
  CHECK(p.constraints[0][0].col == 1);
  CHECK(p.rhs[0] == 1.5);
}
