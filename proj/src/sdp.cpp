#include "chromabound/sdp.hpp"

#include <cmath>
#include <stdexcept>

#include "sdp_internal.hpp"

namespace chromabound {

namespace {

void check_matrix(const SdpProblem& p, const SparseBlockMatrix& m, const std::string& what) {
  const int nb = static_cast<int>(p.blocks.size());
  for (const auto& e : m) {
    if (e.block < 0 || e.block >= nb)
      throw std::invalid_argument(what + ": block index " + std::to_string(e.block) + " out of range");
    const int d = p.block_dim(e.block);
    if (e.row < 0 || e.col < 0 || e.row >= d || e.col >= d)
      throw std::invalid_argument(what + ": entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ") outside block " +
                                  std::to_string(e.block));
    if (e.row > e.col) throw std::invalid_argument(what + ": entries must satisfy row <= col");
    if (p.is_diagonal(e.block) && e.row != e.col)
      throw std::invalid_argument(what + ": off-diagonal entry in diagonal block " +
                                  std::to_string(e.block));
    if (!std::isfinite(e.value)) throw std::invalid_argument(what + ": non-finite coefficient");
  }
}

}  // namespace

void SdpProblem::validate() const {
  if (blocks.empty()) throw std::invalid_argument("problem has no blocks");
  for (int b : blocks)
    if (b == 0) throw std::invalid_argument("block size 0 is not allowed");
  if (rhs.size() != constraints.size())
    throw std::invalid_argument("rhs has " + std::to_string(rhs.size()) + " entries for " +
                                std::to_string(constraints.size()) + " constraints");
  for (double v : rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite right-hand side");
  check_matrix(*this, objective, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    check_matrix(*this, constraints[i], "constraint " + std::to_string(i));
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SdpStatus::DualInfeasible: return "DualInfeasible";
    case SdpStatus::IterLimit: return "IterLimit";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

BlockMatrix zeros_like(const SdpProblem& p) {
  BlockMatrix m;
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const int d = p.block_dim(static_cast<int>(k));
    m.blocks.push_back(p.is_diagonal(static_cast<int>(k)) ? Eigen::MatrixXd::Zero(d, 1)
                                                          : Eigen::MatrixXd::Zero(d, d));
  }
  return m;
}

BlockMatrix to_block_matrix(const SdpProblem& p, const SparseBlockMatrix& sm) {
  BlockMatrix m = zeros_like(p);
  for (const auto& e : sm) {
    auto& b = m.blocks[e.block];
    if (p.is_diagonal(e.block)) {
      b(e.row, 0) += e.value;
    } else {
      b(e.row, e.col) += e.value;
      if (e.row != e.col) b(e.col, e.row) += e.value;
    }
  }
  return m;
}

Eigen::MatrixXd dense_block(const SdpProblem& p, const BlockMatrix& m, int k) {
  if (p.is_diagonal(k)) return m.blocks[k].col(0).asDiagonal();
  return m.blocks[k];
}

double inner(const BlockMatrix& a, const BlockMatrix& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) s += a.blocks[k].cwiseProduct(b.blocks[k]).sum();
  return s;
}

double min_eigenvalue(const SdpProblem& p, const BlockMatrix& m) {
  double lo = INFINITY;
  for (std::size_t k = 0; k < m.blocks.size(); ++k) {
    if (p.is_diagonal(static_cast<int>(k))) {
      lo = std::min(lo, m.blocks[k].minCoeff());
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.blocks[k], Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues()(0));
    }
  }
  return lo;
}

namespace detail {

Eigen::VectorXd apply_A(const SdpProblem& p, const BlockMatrix& G) {
  const int m = p.num_constraints();
  Eigen::VectorXd out(m);
  for (int i = 0; i < m; ++i) {
    double s = 0;
    for (const auto& e : p.constraints[i]) {
      const auto& g = G.blocks[e.block];
      if (p.is_diagonal(e.block)) s += e.value * g(e.row, 0);
      else if (e.row == e.col) s += e.value * g(e.row, e.row);
      else s += e.value * (g(e.row, e.col) + g(e.col, e.row));
    }
    out(i) = s;
  }
  return out;
}

void add_At(const SdpProblem& p, const Eigen::VectorXd& y, double scale, BlockMatrix& out) {
  for (int i = 0; i < p.num_constraints(); ++i) {
    const double yi = scale * y(i);
    if (yi == 0) continue;
    for (const auto& e : p.constraints[i]) {
      auto& b = out.blocks[e.block];
      if (p.is_diagonal(e.block)) {
        b(e.row, 0) += yi * e.value;
      } else {
        b(e.row, e.col) += yi * e.value;
        if (e.row != e.col) b(e.col, e.row) += yi * e.value;
      }
    }
  }
}

BlockMatrix identity_like(const SdpProblem& p, double diag) {
  BlockMatrix m = zeros_like(p);
  for (std::size_t k = 0; k < m.blocks.size(); ++k) {
    if (p.is_diagonal(static_cast<int>(k))) m.blocks[k].setConstant(diag);
    else m.blocks[k].diagonal().setConstant(diag);
  }
  return m;
}

void axpy(double a, const BlockMatrix& x, BlockMatrix& y) {
  for (std::size_t k = 0; k < x.blocks.size(); ++k) y.blocks[k] += a * x.blocks[k];
}

BlockMatrix sub(const BlockMatrix& a, const BlockMatrix& b) {
  BlockMatrix out = a;
  axpy(-1.0, b, out);
  return out;
}

double frobenius(const BlockMatrix& a) {
  double s = 0;
  for (const auto& b : a.blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

void evaluate(const SdpProblem& p, const BlockMatrix& C, SdpSolution& s) {
  Eigen::Map<const Eigen::VectorXd> b(p.rhs.data(), static_cast<Eigen::Index>(p.rhs.size()));
  s.primal_value = inner(C, s.X);
  s.dual_value = p.rhs.empty() ? 0.0 : b.dot(s.y);
  s.gap = std::abs(s.primal_value - s.dual_value) / (1 + std::abs(s.primal_value));
  s.primal_residual =
      p.rhs.empty() ? 0.0 : (b - apply_A(p, s.X)).norm() / (1 + b.norm());
  BlockMatrix rd = sub(C, s.Z);
  add_At(p, s.y, -1.0, rd);
  s.dual_residual = frobenius(rd) / (1 + frobenius(C));
}

}  // namespace detail

SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts) {
  problem.validate();
  if (!(opts.tol > 0) || opts.max_iters < 1)
    throw std::invalid_argument("solve: tol must be positive and max_iters >= 1");
  SdpMethod method = opts.method;
  if (method == SdpMethod::Auto)
    method = problem.num_constraints() > opts.auto_admm_threshold ? SdpMethod::Admm
                                                                  : SdpMethod::InteriorPoint;
  SdpSolution s = method == SdpMethod::Admm ? detail::solve_admm(problem, opts)
                                            : detail::solve_interior_point(problem, opts);
  s.method_used = method;
  return s;
}

LpSolution solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const SolveOptions& opts) {
  const int n = static_cast<int>(c.size());
  if (n == 0) throw std::invalid_argument("solve_lp: no variables");
  if (A.cols() != n || A.rows() != b.size())
    throw std::invalid_argument("solve_lp: dimension mismatch");
  SdpProblem p;
  p.blocks = {-n};
  for (int j = 0; j < n; ++j)
    if (c(j) != 0) p.objective.push_back({0, j, j, c(j)});
  for (int i = 0; i < A.rows(); ++i) {
    SparseBlockMatrix row;
    for (int j = 0; j < n; ++j)
      if (A(i, j) != 0) row.push_back({0, j, j, A(i, j)});
    p.constraints.push_back(std::move(row));
    p.rhs.push_back(b(i));
  }
  SdpSolution s = solve(p, opts);
  LpSolution out;
  out.status = s.status;
  out.value = s.primal_value;
  out.x = s.X.blocks[0].col(0);
  out.y = s.y;
  out.gap = s.gap;
  return out;
}

}  // namespace chromabound
