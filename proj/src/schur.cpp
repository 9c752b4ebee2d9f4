#include "chromabound/schur.hpp"

#include <algorithm>

namespace chromabound {

SchurAssembler::SchurAssembler(const SdpProblem& problem)
    : problem_(problem), m_(problem.num_constraints()) {
  const int nb = static_cast<int>(problem.blocks.size());
  terms_.assign(nb, {});
  distinct_rows_.assign(nb, {});
  suffix_nnz_.assign(nb, {});
  touching_.assign(nb, {});
  diag_.assign(nb, {});
  for (int k = 0; k < nb; ++k) {
    if (problem.is_diagonal(k)) {
      diag_[k].assign(problem.block_dim(k), {});
    } else {
      terms_[k].assign(m_, {});
    }
  }
  for (int i = 0; i < m_; ++i) {
    for (const auto& e : problem.constraints[i]) {
      if (problem.is_diagonal(e.block)) {
        diag_[e.block][e.row].push_back({i, e.value});
      } else {
        auto& t = terms_[e.block][i];
        t.push_back({e.row, e.col, e.value});
        if (e.row != e.col) t.push_back({e.col, e.row, e.value});
      }
    }
  }
  for (int k = 0; k < nb; ++k) {
    if (problem.is_diagonal(k)) continue;
    distinct_rows_[k].assign(m_, 0);
    suffix_nnz_[k].assign(m_ + 1, 0);
    for (int i = m_ - 1; i >= 0; --i) {
      const auto& t = terms_[k][i];
      suffix_nnz_[k][i] = suffix_nnz_[k][i + 1] + static_cast<long long>(t.size());
      std::vector<int> rows;
      rows.reserve(t.size());
      for (const auto& term : t) rows.push_back(term.row);
      std::sort(rows.begin(), rows.end());
      distinct_rows_[k][i] =
          static_cast<int>(std::unique(rows.begin(), rows.end()) - rows.begin());
    }
    for (int i = 0; i < m_; ++i)
      if (!terms_[k][i].empty()) touching_[k].push_back(i);
  }
}

void SchurAssembler::dense_row(int i, int k, const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                               Eigen::MatrixXd& M) const {
  const auto& ti = terms_[k][i];
  if (ti.empty()) return;
  const long long d = X.rows();
  const auto& touch = touching_[k];
  auto first = std::lower_bound(touch.begin(), touch.end(), i);

  const long long sparse_cost = static_cast<long long>(ti.size()) * suffix_nnz_[k][i];
  const long long dense_cost = d * d * distinct_rows_[k][i] + suffix_nnz_[k][i];

  if (sparse_cost <= dense_cost) {
    // Tr(A_i X A_j W) = sum a_pq b_rs X_qr W_sp over both-triangle terms.
    for (auto it = first; it != touch.end(); ++it) {
      const int j = *it;
      double acc = 0;
      for (const auto& a : ti)
        for (const auto& b : terms_[k][j]) acc += a.value * b.value * X(a.col, b.row) * W(b.col, a.row);
      M(i, j) += acc;
    }
    return;
  }
  // T = W A_i X, then Tr(A_i X A_j W) = sum_{(r,s) in A_j} b_rs T_sr.
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(d, d);
  std::vector<int> rows;
  for (const auto& a : ti) {
    Y.row(a.row) += a.value * X.row(a.col);
    rows.push_back(a.row);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
  for (int p : rows) T.noalias() += W.col(p) * Y.row(p);
  for (auto it = first; it != touch.end(); ++it) {
    const int j = *it;
    double acc = 0;
    for (const auto& b : terms_[k][j]) acc += b.value * T(b.col, b.row);
    M(i, j) += acc;
  }
}

void SchurAssembler::assemble(const BlockMatrix& X, const BlockMatrix& W, Eigen::MatrixXd& M) const {
  M.setZero(m_, m_);
  const int nb = static_cast<int>(problem_.blocks.size());

#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < m_; ++i) {
    for (int k = 0; k < nb; ++k) {
      if (!problem_.is_diagonal(k)) {
        dense_row(i, k, X.blocks[k], W.blocks[k], M);
        continue;
      }
      const auto& x = X.blocks[k];
      const auto& w = W.blocks[k];
      for (const auto& e : problem_.constraints[i]) {
        if (e.block != k) continue;
        const double scale = e.value * x(e.row, 0) * w(e.row, 0);
        for (const auto& t : diag_[k][e.row])
          if (t.constraint >= i) M(i, t.constraint) += scale * t.value;
      }
    }
  }
  M.triangularView<Eigen::StrictlyLower>() = M.transpose().triangularView<Eigen::StrictlyLower>();
}

Eigen::MatrixXd schur_complement_reference(const SdpProblem& problem, const BlockMatrix& X,
                                           const BlockMatrix& W) {
  const int m = problem.num_constraints();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t k = 0; k < problem.blocks.size(); ++k) {
    const int d = problem.block_dim(static_cast<int>(k));
    Eigen::MatrixXd Xk = dense_block(problem, X, static_cast<int>(k));
    Eigen::MatrixXd Wk = dense_block(problem, W, static_cast<int>(k));
    std::vector<Eigen::MatrixXd> A(m, Eigen::MatrixXd::Zero(d, d));
    for (int i = 0; i < m; ++i)
      for (const auto& e : problem.constraints[i]) {
        if (e.block != static_cast<int>(k)) continue;
        A[i](e.row, e.col) = e.value;
        A[i](e.col, e.row) = e.value;
      }
    for (int i = 0; i < m; ++i) {
      Eigen::MatrixXd P = Xk * A[i] * Wk;
      for (int j = 0; j < m; ++j) M(j, i) += (A[j].transpose().cwiseProduct(P)).sum();
    }
  }
  return M;
}

}  // namespace chromabound
