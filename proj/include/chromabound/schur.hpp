#pragma once

#include <vector>

#include <Eigen/Dense>

#include "chromabound/sdp.hpp"

namespace chromabound {

// Assembles the HKM Schur complement M_ij = sum_k Tr(A_i X_k A_j W_k), where
// W = Z^{-1}. Constraint structure is indexed once at construction. Rows are
// distributed over OpenMP threads; each row i owns entries j >= i.
class SchurAssembler {
 public:
  explicit SchurAssembler(const SdpProblem& problem);

  void assemble(const BlockMatrix& X, const BlockMatrix& W, Eigen::MatrixXd& M) const;

 private:
  struct Term {
    int row;
    int col;
    double value;
  };
  struct Touch {
    int constraint;
    double value;
  };

  void dense_row(int i, int k, const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                 Eigen::MatrixXd& M) const;

  const SdpProblem& problem_;
  int m_ = 0;
  // terms_[k][i]: both triangles of A_i restricted to dense block k.
  std::vector<std::vector<std::vector<Term>>> terms_;
  // distinct_rows_[k][i]: number of distinct row indices among terms_[k][i].
  std::vector<std::vector<int>> distinct_rows_;
  // suffix_nnz_[k][i]: sum of terms_[k][j].size() for j >= i.
  std::vector<std::vector<long long>> suffix_nnz_;
  // touching_[k]: constraints with entries in block k, ascending.
  std::vector<std::vector<int>> touching_;
  // diag_[k][t]: constraints touching diagonal entry t of diagonal block k.
  std::vector<std::vector<std::vector<Touch>>> diag_;
};

// Serial dense reference: forms every A_i densely and evaluates the trace
// formula directly. O(m d^3 + m^2 d^2); for tests and benchmarks.
Eigen::MatrixXd schur_complement_reference(const SdpProblem& problem, const BlockMatrix& X,
                                           const BlockMatrix& W);

}  // namespace chromabound
