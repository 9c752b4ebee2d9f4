#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chromabound {

// One stored coefficient of a block-structured symmetric matrix. Only the
// upper triangle is stored (row <= col); an off-diagonal entry stands for
// both (row,col) and (col,row). Indices are 0-based. Diagonal blocks only
// accept row == col.
struct SparseEntry {
  int block;
  int row;
  int col;
  double value;
};

using SparseBlockMatrix = std::vector<SparseEntry>;

// minimize <C, X>  subject to  <A_i, X> = b_i,  X psd.
// Block sizes: positive for a dense symmetric block, negative for a
// diagonal (LP) block of that many nonnegative variables.
struct SdpProblem {
  std::vector<int> blocks;
  SparseBlockMatrix objective;
  std::vector<SparseBlockMatrix> constraints;
  std::vector<double> rhs;

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int block_dim(int k) const { return blocks[k] < 0 ? -blocks[k] : blocks[k]; }
  bool is_diagonal(int k) const { return blocks[k] < 0; }

  // Throws std::invalid_argument naming the first structural defect.
  void validate() const;
};

// A block-diagonal matrix. Dense blocks are d x d; diagonal blocks are
// stored as a d x 1 column.
struct BlockMatrix {
  std::vector<Eigen::MatrixXd> blocks;
};

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, IterLimit, NumericalFailure };

std::string to_string(SdpStatus s);

enum class SdpMethod {
  Auto,           // interior point unless the problem is too large for a dense Schur matrix
  InteriorPoint,  // primal-dual HKM with Mehrotra predictor-corrector
  Admm,           // dual augmented Lagrangian with PSD projections
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 200;
  SdpMethod method = SdpMethod::Auto;
  // Auto switches to ADMM above this many constraints.
  int auto_admm_threshold = 4000;
  int admm_max_iters = 50000;
  // ADMM stops at this tolerance. Reaching it reports Optimal only when it is
  // also <= tol; otherwise the status is IterLimit with the best iterate.
  double admm_tol = 1e-7;
  bool verbose = false;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double primal_value = 0;  // <C, X>
  double dual_value = 0;    // b^T y
  double gap = 0;           // |primal - dual| / (1 + |primal|)
  double primal_residual = 0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0;    // ||C - Z - A*(y)||_F / (1 + ||C||_F)
  int iterations = 0;
  SdpMethod method_used = SdpMethod::InteriorPoint;
  BlockMatrix X;
  BlockMatrix Z;
  Eigen::VectorXd y;
};

SdpSolution solve(const SdpProblem& problem, const SolveOptions& opts = {});

struct LpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double value = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double gap = 0;
};

// minimize c^T x  subject to  A x = b,  x >= 0, via one diagonal block.
LpSolution solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const SolveOptions& opts = {});

// Helpers shared by the solvers and tests.
BlockMatrix zeros_like(const SdpProblem& p);
BlockMatrix to_block_matrix(const SdpProblem& p, const SparseBlockMatrix& m);
Eigen::MatrixXd dense_block(const SdpProblem& p, const BlockMatrix& m, int k);
double inner(const BlockMatrix& a, const BlockMatrix& b);
// Smallest eigenvalue over all blocks.
double min_eigenvalue(const SdpProblem& p, const BlockMatrix& m);

}  // namespace chromabound
