// Alternating direction augmented Lagrangian on the dual (Wen, Goldfarb and
// Yin, 2010). Each sweep is one solve with the fixed matrix A A^T and one
// eigendecomposition per dense block, so it reaches problems whose Schur
// matrix would not fit in memory. Convergence is first order.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include <Eigen/SparseCholesky>
#include <lapacke.h>

#include "sdp_internal.hpp"

namespace chromabound::detail {

namespace {

// Splits v into its psd part (returned in v) and the negative part. Only the
// eigenpairs of the side expected to be smaller are computed; the guess is
// carried between sweeps in `want_positive`.
void project_psd(Eigen::MatrixXd& v, Eigen::MatrixXd& negative_part, bool& want_positive) {
  const lapack_int d = static_cast<lapack_int>(v.rows());
  const double bound = v.norm() + 1.0;
  Eigen::MatrixXd a = v, z(d, std::max<lapack_int>(d, 1));
  Eigen::VectorXd w(d);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max<lapack_int>(d, 1)));
  lapack_int found = 0;
  const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', d, a.data(), d,
                                  want_positive ? 0.0 : -bound, want_positive ? bound : 0.0, 0, 0,
                                  0.0, &found, w.data(), z.data(), d, support.data());
  if (info != 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMin(0.0);
    negative_part = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    v -= negative_part;
    return;
  }
  auto q = z.leftCols(found);
  Eigen::MatrixXd part = q * w.head(found).asDiagonal() * q.transpose();
  if (want_positive) {
    negative_part = v - part;
    v = std::move(part);
  } else {
    negative_part = std::move(part);
    v -= negative_part;
  }
  const lapack_int npos = want_positive ? found : d - found;
  want_positive = 2 * npos <= d;
}

}  // namespace

SdpSolution solve_admm(const SdpProblem& p, const SolveOptions& opts) {
  const int m = p.num_constraints();
  const BlockMatrix C = to_block_matrix(p, p.objective);
  const Eigen::Map<const Eigen::VectorXd> b(p.rhs.data(), m);

  // A A^T from shared coefficient positions.
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, double>>> by_position;
  for (int i = 0; i < m; ++i)
    for (const auto& e : p.constraints[i]) {
      const std::uint64_t key = (static_cast<std::uint64_t>(e.block) << 42) |
                                (static_cast<std::uint64_t>(e.row) << 21) |
                                static_cast<std::uint64_t>(e.col);
      by_position[key].emplace_back(i, (e.row == e.col ? 1.0 : std::sqrt(2.0)) * e.value);
    }
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& [key, list] : by_position)
    for (const auto& [i, a] : list)
      for (const auto& [j, c] : list) trip.emplace_back(i, j, a * c);
  Eigen::SparseMatrix<double> aat(m, m);
  aat.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  if (m > 0) {
    ldlt.compute(aat);
    if (ldlt.info() != Eigen::Success) {
      // Dependent constraints: a tiny shift keeps the projection well defined.
      Eigen::SparseMatrix<double> shifted = aat;
      for (int i = 0; i < m; ++i) shifted.coeffRef(i, i) += 1e-10;
      ldlt.compute(shifted);
    }
  }

  SdpSolution cur;
  cur.X = zeros_like(p);
  cur.Z = zeros_like(p);
  cur.y = Eigen::VectorXd::Zero(m);
  if (m > 0 && ldlt.info() != Eigen::Success) {
    cur.status = SdpStatus::NumericalFailure;
    return cur;
  }

  double mu = 1.0;
  int primal_heavy = 0, dual_heavy = 0;
  SdpSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  const int check_every = 10;
  Eigen::MatrixXd negative;
  std::vector<char> want_positive(p.blocks.size(), 1);

  for (int iter = 1; iter <= opts.admm_max_iters; ++iter) {
    // y = (A A^T)^{-1} (mu (b - A(X)) + A(C - S))
    if (m > 0) {
      Eigen::VectorXd rhs = mu * (b - apply_A(p, cur.X)) + apply_A(p, sub(C, cur.Z));
      cur.y = ldlt.solve(rhs);
    }
    // V = C - A*(y) - mu X;  S = V_+;  X = -V_- / mu
    BlockMatrix v = C;
    add_At(p, cur.y, -1.0, v);
    axpy(-mu, cur.X, v);
    for (std::size_t k = 0; k < v.blocks.size(); ++k) {
      if (p.is_diagonal(static_cast<int>(k))) {
        cur.Z.blocks[k] = v.blocks[k].cwiseMax(0.0);
        cur.X.blocks[k] = (cur.Z.blocks[k] - v.blocks[k]) / mu;
      } else {
        bool hint = want_positive[k];
        project_psd(v.blocks[k], negative, hint);
        want_positive[k] = hint;
        cur.Z.blocks[k] = std::move(v.blocks[k]);
        cur.X.blocks[k] = -negative / mu;
      }
    }

    if (iter % check_every != 0 && iter != opts.admm_max_iters) continue;
    cur.iterations = iter;
    evaluate(p, C, cur);
    const double sc = std::max({cur.gap, cur.primal_residual, cur.dual_residual});
    if (sc < best_score) {
      best_score = sc;
      best = cur;
    }
    if (opts.verbose && iter % (check_every * 50) == 0)
      std::fprintf(stderr, "admm %6d  p=%.10e d=%.10e gap=%.2e rp=%.2e rd=%.2e mu=%.2e\n", iter,
                   cur.primal_value, cur.dual_value, cur.gap, cur.primal_residual,
                   cur.dual_residual, mu);
    if (sc <= opts.admm_tol) {
      cur.status = sc <= opts.tol ? SdpStatus::Optimal : SdpStatus::IterLimit;
      cur.method_used = SdpMethod::Admm;
      return cur;
    }
    // Rebalance the penalty when one residual dominates persistently.
    const double ratio = (cur.primal_residual + 1e-300) / (cur.dual_residual + 1e-300);
    if (ratio > 1) ++primal_heavy, dual_heavy = 0;
    else ++dual_heavy, primal_heavy = 0;
    if (primal_heavy >= 5) {
      mu = std::min(mu * 1.6, 1e6);
      primal_heavy = 0;
    } else if (dual_heavy >= 5) {
      mu = std::max(mu / 1.6, 1e-6);
      dual_heavy = 0;
    }
  }
  best.status = SdpStatus::IterLimit;
  best.method_used = SdpMethod::Admm;
  return best;
}

}  // namespace chromabound::detail
