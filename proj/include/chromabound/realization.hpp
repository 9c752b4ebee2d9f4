#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chromabound/correlation.hpp"
#include "chromabound/graph.hpp"
#include "json.hpp"

namespace chromabound {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kVerifyTol = 1e-8;

// Two families of c-outcome measurements on a common space plus a unit
// vector. E[v*c + i] is Alice's projection for input v and outcome i.
struct Realization {
  int n = 0;
  int c = 0;
  int dim = 0;
  std::vector<CMatrix> E, F;
  CVector eta;

  CMatrix& e(int v, int i) { return E[static_cast<std::size_t>(v) * c + i]; }
  CMatrix& f(int w, int j) { return F[static_cast<std::size_t>(w) * c + j]; }
  const CMatrix& e(int v, int i) const { return E[static_cast<std::size_t>(v) * c + i]; }
  const CMatrix& f(int w, int j) const { return F[static_cast<std::size_t>(w) * c + j]; }
};

// A positive operator valued measure per vertex.
struct Povm {
  int n = 0;
  int c = 0;
  int dim = 0;
  std::vector<CMatrix> P;

  CMatrix& at(int v, int i) { return P[static_cast<std::size_t>(v) * c + i]; }
  const CMatrix& at(int v, int i) const { return P[static_cast<std::size_t>(v) * c + i]; }
};

// One verified condition: the largest residual and where it occurs.
struct Check {
  std::string name;
  double worst = 0;
  std::string where;
  bool passed = true;
};

struct CheckReport {
  bool ok = true;
  // False when the hypothesis of a conditional check fails; the dependent
  // checks are then skipped.
  bool precondition_ok = true;
  std::string note;
  std::vector<Check> checks;

  void add(std::string name, double worst, std::string where, double tol);
  const Check* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

// Spectral norm.
double operator_norm(const CMatrix& m);

// Idempotence, self-adjointness and completeness of both families, cross
// commutation, and a unit state. Throws std::invalid_argument on shape errors.
CheckReport verify_realization(const Realization& r, double tol = kVerifyTol);

// Entries >= -tol, each (v,w) block sums to 1, and both marginals are
// independent of the other party's input.
CheckReport verify_correlation(const Correlation& p, double tol = kVerifyTol);

// p(i,j|v,w) = <E_{v,i} F_{w,j} eta, eta>. Throws std::domain_error if an
// entry has an imaginary part above 1e-9.
Correlation correlation_of(const Realization& r);

// Alice's marginal <E_{v,i} eta, eta> (index v*c + i) and Bob's.
std::vector<double> marginals_a(const Realization& r);
std::vector<double> marginals_b(const Realization& r);

// p(i = j | v, v) = 1 for every v, within tol.
bool check_synchronous(const Correlation& p, double tol = kVerifyTol);
double synchronous_residual(const Correlation& p);

// max |p(i,j|v,w) - p(j,i|w,v)|.
double transpose_symmetry_residual(const Correlation& p);

// Homomorphism game G -> H: p(i=j|v=w) = 1 and p(i ~_H j | v ~_G w) = 1.
// p has inputs V(G) and outputs V(H).
CheckReport check_hom_conditions(const Correlation& p, const Graph& g, const Graph& h,
                                 double tol = kVerifyTol);

// Requires a synchronous correlation. Samples pairs of E-words X, Y of length
// at most max_word_len and checks <XY eta, eta> = <YX eta, eta>, checks
// E_{v,i} eta = F_{v,i} eta, and that a word in E applied to eta equals the
// reversed word in F applied to eta.
CheckReport check_tracial_and_reversal(const Realization& r, int max_word_len, int samples,
                                       double tol = kVerifyTol, std::uint64_t seed = 1);

// ||E_{v,i} E_{w,i}|| and ||F_{v,i} F_{w,i}|| on every edge. These vanish
// for minimal realizations of a colouring; for other realizations the
// report is informational (ok stays true, failures are listed in the note).
// `outcomes` restricts the check to some outcomes; empty means all.
CheckReport check_zero_products(const Realization& r, const Graph& g, double tol = kVerifyTol,
                                const std::vector<int>& outcomes = {});

// Restricts to the smallest subspace containing eta and invariant under
// every F (Krylov closure with rank tolerance `rank_tol`). For a synchronous
// realization this subspace also reduces every E, and eta becomes cyclic for
// the F family.
Realization minimize(const Realization& r, double rank_tol = 1e-10);

// c shifted copies: E~_{v,i} = sum_k E_{v,(k+i) mod c} on copy k and
// eta~ = (eta, ..., eta)/sqrt(c). All marginals become 1/c.
Realization symmetrize_marginals(const Realization& r);

struct Dilation {
  Povm povm;
  CMatrix W;  // isometry from the old space into the new one
};

// Largest deviation of the v-th family from a projection valued measure.
double pvm_residual(const Povm& p, int v);

// Naimark dilation of family v0: W h = (P_{v0,0}^{1/2} h, ..., P_{v0,c-1}^{1/2} h);
// family v0 becomes the coordinate block projections and every other family
// becomes W P W* (with I - W W* added to outcome 0). W* P~ W = P for all
// families and projection valued families stay projection valued.
// Throws std::invalid_argument unless every family is a POVM within tol.
Dilation dilate_to_pvm(const Povm& p, int v0, double tol = kVerifyTol);

// Maximally entangled realization from rank-r projections on C^d with
// E_v E_w = 0 on edges: E_{v,0} = E_v (x) I, F_{w,0} = I (x) conj(E_w), the
// complements as outcome 1, eta = d^{-1/2} sum_i e_i (x) e_i.
Realization from_projective_representation(const Graph& g, const std::vector<CMatrix>& projs,
                                           int rank, double tol = kVerifyTol);

// Scalar realization E_{v,i} = F_{v,i} = [colouring(v) = i].
Realization from_classical_coloring(const Graph& g, const std::vector<int>& coloring, int c);

// (p2 p1)(a,b|v,w) = sum_{i,j} p2(a,b|i,j) p1(i,j|v,w): p1 maps n inputs to c
// outputs, p2 maps c inputs to l outputs.
Correlation compose_correlations(const Correlation& p2, const Correlation& p1);

// {"dim", "n", "c", "eta": [[re, im], ...], "E": {"v,i": rows of [re, im]}, "F": {...}}.
nlohmann::json realization_to_json(const Realization& r);
// Throws ParseError on malformed JSON text and std::invalid_argument on
// structural problems.
Realization realization_from_json(const nlohmann::json& j);
Realization parse_realization(const std::string& text);

}  // namespace chromabound
