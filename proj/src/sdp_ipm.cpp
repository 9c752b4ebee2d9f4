// Infeasible-start primal-dual path following with the HKM direction and a
// Mehrotra predictor-corrector, in the style of SDPT3/CSDP.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <lapacke.h>

#include "chromabound/schur.hpp"
#include "sdp_internal.hpp"

namespace chromabound::detail {

namespace {

constexpr double kInfeasibilityRatio = 1e-8;

// Per-block a*b*c; diagonal blocks multiply elementwise.
BlockMatrix triple(const SdpProblem& p, const BlockMatrix& a, const BlockMatrix& b,
                   const BlockMatrix& c) {
  BlockMatrix out = a;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) {
    if (p.is_diagonal(static_cast<int>(k)))
      out.blocks[k] = a.blocks[k].cwiseProduct(b.blocks[k]).cwiseProduct(c.blocks[k]);
    else
      out.blocks[k].noalias() = a.blocks[k] * b.blocks[k] * c.blocks[k];
  }
  return out;
}

void symmetrize(const SdpProblem& p, BlockMatrix& g) {
  for (std::size_t k = 0; k < g.blocks.size(); ++k)
    if (!p.is_diagonal(static_cast<int>(k))) {
      Eigen::MatrixXd t = 0.5 * (g.blocks[k] + g.blocks[k].transpose());
      g.blocks[k] = std::move(t);
    }
}

// Inverse of a positive definite block matrix; false if some block is not.
bool invert_pd(const SdpProblem& p, const BlockMatrix& z, BlockMatrix& inv) {
  inv = z;
  for (std::size_t k = 0; k < z.blocks.size(); ++k) {
    if (p.is_diagonal(static_cast<int>(k))) {
      if ((z.blocks[k].array() <= 0).any()) return false;
      inv.blocks[k] = z.blocks[k].cwiseInverse();
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(z.blocks[k]);
      if (llt.info() != Eigen::Success) return false;
      inv.blocks[k] = llt.solve(Eigen::MatrixXd::Identity(z.blocks[k].rows(), z.blocks[k].cols()));
      inv.blocks[k] = 0.5 * (inv.blocks[k] + inv.blocks[k].transpose()).eval();
    }
  }
  return true;
}

// Largest alpha with x + alpha*dx psd (infinity if unbounded, 0 if x is not pd).
double max_step(const SdpProblem& p, const BlockMatrix& x, const BlockMatrix& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    if (p.is_diagonal(static_cast<int>(k))) {
      for (Eigen::Index t = 0; t < x.blocks[k].rows(); ++t)
        if (dx.blocks[k](t, 0) < 0) alpha = std::min(alpha, -x.blocks[k](t, 0) / dx.blocks[k](t, 0));
      continue;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(x.blocks[k]);
    if (llt.info() != Eigen::Success) return 0;
    Eigen::MatrixXd s = llt.matrixL().solve(dx.blocks[k]);
    s = llt.matrixL().solve(s.transpose().eval());
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

// Cholesky of the Schur matrix in place with escalating diagonal shifts.
bool factor_schur(Eigen::MatrixXd& M) {
  const lapack_int m = static_cast<lapack_int>(M.rows());
  if (m == 0) return true;
  const double scale = std::max(1e-300, M.diagonal().cwiseAbs().maxCoeff());
  Eigen::MatrixXd backup = M;
  double shift = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (attempt > 0) {
      shift = shift == 0 ? 1e-14 * scale : shift * 100;
      M = backup;
      M.diagonal().array() += shift;
    }
    if (LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', m, M.data(), m) == 0) return true;
  }
  return false;
}

Eigen::VectorXd solve_schur(const Eigen::MatrixXd& L, Eigen::VectorXd rhs) {
  const lapack_int m = static_cast<lapack_int>(L.rows());
  if (m > 0) LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', m, 1, L.data(), m, rhs.data(), m);
  return rhs;
}

double score(const SdpSolution& s) {
  return std::max({s.gap, s.primal_residual, s.dual_residual});
}

}  // namespace

SdpSolution solve_interior_point(const SdpProblem& p, const SolveOptions& opts) {
  const int m = p.num_constraints();
  const BlockMatrix C = to_block_matrix(p, p.objective);
  const Eigen::Map<const Eigen::VectorXd> b(p.rhs.data(), m);
  const double normC = frobenius(C);

  // Starting point scaled to the data, per block.
  SdpSolution cur;
  cur.X = zeros_like(p);
  cur.Z = zeros_like(p);
  cur.y = Eigen::VectorXd::Zero(m);
  double ntot = 0;
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const int kk = static_cast<int>(k);
    const double n = p.block_dim(kk);
    ntot += n;
    double max_ratio = 0, max_norm_a = 0;
    for (int i = 0; i < m; ++i) {
      double na = 0;
      for (const auto& e : p.constraints[i])
        if (e.block == kk) na += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      na = std::sqrt(na);
      max_norm_a = std::max(max_norm_a, na);
      max_ratio = std::max(max_ratio, (1 + std::abs(p.rhs[i])) / (1 + na));
    }
    const double xi = std::max({10.0, std::sqrt(n), n * max_ratio});
    const double eta = std::max({10.0, std::sqrt(n), max_norm_a, C.blocks[k].norm()});
    if (p.is_diagonal(kk)) {
      cur.X.blocks[k].setConstant(xi);
      cur.Z.blocks[k].setConstant(eta);
    } else {
      cur.X.blocks[k].diagonal().setConstant(xi);
      cur.Z.blocks[k].diagonal().setConstant(eta);
    }
  }

  SchurAssembler schur(p);
  SdpSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  int stalled = 0;
  Eigen::MatrixXd M;
  BlockMatrix Winv;

  auto finish = [&](SdpStatus status, SdpSolution& s) {
    s.status = status;
    s.method_used = SdpMethod::InteriorPoint;
    return s;
  };

  for (int iter = 0;; ++iter) {
    cur.iterations = iter;
    evaluate(p, C, cur);
    const double sc = score(cur);
    if (sc < best_score) {
      best_score = sc;
      best = cur;
    }
    if (opts.verbose)
      std::fprintf(stderr, "ipm %3d  p=%.10e d=%.10e gap=%.2e rp=%.2e rd=%.2e\n", iter,
                   cur.primal_value, cur.dual_value, cur.gap, cur.primal_residual,
                   cur.dual_residual);
    if (cur.gap <= opts.tol && cur.primal_residual <= opts.tol && cur.dual_residual <= opts.tol)
      return finish(SdpStatus::Optimal, cur);

    BlockMatrix Rd = sub(C, cur.Z);
    add_At(p, cur.y, -1.0, Rd);
    if (cur.dual_value > 0) {
      BlockMatrix ray = sub(C, Rd);  // Z + A*(y)
      if (frobenius(ray) / cur.dual_value < kInfeasibilityRatio)
        return finish(SdpStatus::PrimalInfeasible, cur);
    }
    if (cur.primal_value < 0 && m > 0) {
      if (apply_A(p, cur.X).norm() / -cur.primal_value < kInfeasibilityRatio)
        return finish(SdpStatus::DualInfeasible, cur);
    } else if (cur.primal_value < 0 && m == 0 && -cur.primal_value > 1e8 * (1 + normC)) {
      return finish(SdpStatus::DualInfeasible, cur);
    }
    if (iter >= opts.max_iters) return finish(SdpStatus::IterLimit, best);

    if (!invert_pd(p, cur.Z, Winv)) return finish(SdpStatus::NumericalFailure, best);
    const double mu = inner(cur.X, cur.Z) / ntot;

    schur.assemble(cur.X, Winv, M);
    if (!factor_schur(M)) return finish(SdpStatus::NumericalFailure, best);

    const Eigen::VectorXd a_w = apply_A(p, Winv);
    const Eigen::VectorXd base_rhs = b + apply_A(p, triple(p, cur.X, Rd, Winv));

    auto direction = [&](double sigma, const BlockMatrix* corr, Eigen::VectorXd& dy,
                         BlockMatrix& dX, BlockMatrix& dZ) {
      Eigen::VectorXd rhs = base_rhs - sigma * mu * a_w;
      if (corr) rhs += apply_A(p, *corr);
      dy = solve_schur(M, rhs);
      dZ = Rd;
      add_At(p, dy, -1.0, dZ);
      dX = Winv;
      for (auto& blk : dX.blocks) blk *= sigma * mu;
      axpy(-1.0, cur.X, dX);
      BlockMatrix t = triple(p, cur.X, dZ, Winv);
      if (corr) axpy(1.0, *corr, t);
      symmetrize(p, t);
      axpy(-1.0, t, dX);
    };

    Eigen::VectorXd dy;
    BlockMatrix dX, dZ;
    direction(0.0, nullptr, dy, dX, dZ);
    if (!dy.allFinite()) return finish(SdpStatus::NumericalFailure, best);
    const double ap = std::min(1.0, max_step(p, cur.X, dX));
    const double ad = std::min(1.0, max_step(p, cur.Z, dZ));

    BlockMatrix xa = cur.X, za = cur.Z;
    axpy(ap, dX, xa);
    axpy(ad, dZ, za);
    const double ratio = std::max(0.0, inner(xa, za)) / (mu * ntot);
    const double expon = std::max(1.0, 3 * std::min(ap, ad) * std::min(ap, ad));
    const double sigma = std::min(1.0, std::pow(ratio, expon));

    BlockMatrix corr = triple(p, dX, dZ, Winv);
    direction(sigma, &corr, dy, dX, dZ);
    if (!dy.allFinite()) return finish(SdpStatus::NumericalFailure, best);

    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    const double sp = std::min(1.0, gamma * max_step(p, cur.X, dX));
    const double sd = std::min(1.0, gamma * max_step(p, cur.Z, dZ));
    axpy(sp, dX, cur.X);
    axpy(sd, dZ, cur.Z);
    cur.y += sd * dy;

    stalled = (sp < 1e-9 && sd < 1e-9) ? stalled + 1 : 0;
    if (stalled >= 3) return finish(SdpStatus::NumericalFailure, best);
  }
}

}  // namespace chromabound::detail
