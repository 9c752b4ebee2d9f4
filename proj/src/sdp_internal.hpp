#pragma once

#include <Eigen/Dense>

#include "chromabound/sdp.hpp"

namespace chromabound::detail {

// <A_i, G> for every constraint; G need not be symmetric.
Eigen::VectorXd apply_A(const SdpProblem& p, const BlockMatrix& G);

// out += scale * sum_i y_i A_i
void add_At(const SdpProblem& p, const Eigen::VectorXd& y, double scale, BlockMatrix& out);

BlockMatrix identity_like(const SdpProblem& p, double diag);
void axpy(double a, const BlockMatrix& x, BlockMatrix& y);
BlockMatrix sub(const BlockMatrix& a, const BlockMatrix& b);
double frobenius(const BlockMatrix& a);

// Fills residuals, objective values and gap from the iterate in `s`.
void evaluate(const SdpProblem& p, const BlockMatrix& C, SdpSolution& s);

SdpSolution solve_interior_point(const SdpProblem& p, const SolveOptions& opts);
SdpSolution solve_admm(const SdpProblem& p, const SolveOptions& opts);

}  // namespace chromabound::detail
