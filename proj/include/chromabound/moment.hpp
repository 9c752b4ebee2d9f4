#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chromabound/correlation.hpp"
#include "chromabound/graph.hpp"
#include "chromabound/sdp.hpp"
#include "chromabound/words.hpp"
#include "json.hpp"

namespace chromabound {

// sum_v sum_{i != j} p(i,j|v,v) + sum_{v ~ w} sum_i p(i,i|v,w), with v ~ w
// running over ordered pairs (each edge counted twice).
double eval_graph_functional(const Graph& g, int c, const Correlation& p);

// constant + sum coef * y[var]
struct LinearForm {
  double constant = 0;
  std::vector<std::pair<int, double>> terms;

  double evaluate(const std::vector<double>& y) const;
};

struct MomentOptions {
  std::size_t word_cap = 2000;
  // Adds a diagonal block with p(i,j|v,w) >= 0. Needed at level 1, implied
  // by positivity from level 2 on; default adds it at level 1 only.
  std::optional<bool> explicit_nonnegativity;
};

// Level-N moment relaxation. The last outcome of every measurement is
// eliminated through e_{v,c-1} = 1 - sum_{i<c-1} e_{v,i} (same for f), so the
// matrix is indexed by canonical words over outcomes 0..c-2 and every
// sum-to-one relation holds identically. Entry (a,b) is the moment of
// reduce(b* a); equal products share a variable, zero products are pinned to
// 0, and the real symmetric restriction identifies a word with its adjoint.
//
// The SDP is posed in moment form: the dual slack C - sum y_k A_k is the
// moment matrix, y_k is the value of variable k and the dual objective is
// -(L - L0). Hence  min L = objective.constant - dual optimum.
struct MomentSdp {
  int level = 0;
  int n = 0;
  int c = 0;
  std::vector<Word> index;
  std::vector<Word> variables;
  // Variable id of each upper-triangle entry (row-major, r <= s);
  // kPinnedZero / kPinnedOne for the constants.
  std::vector<int> entry_variable;
  SdpProblem problem;
  LinearForm objective;
  bool has_nonnegativity_block = false;

  static constexpr int kPinnedZero = -1;
  static constexpr int kPinnedOne = -2;

  int order() const { return static_cast<int>(index.size()); }
  int entry(int r, int s) const;

  // Variable id of a word (after reduction and adjoint identification), or
  // kPinnedZero / kPinnedOne. Throws if the word lies outside the relaxation.
  int variable_of(const Word& w) const;

  // p(i,j|v,w) = s(e_{v,i} f_{w,j}) expanded over the variables.
  LinearForm correlation_entry(int v, int i, int w, int j) const;

  // Moment matrix for variable values y (order x order).
  Eigen::MatrixXd moment_matrix(const std::vector<double>& y) const;

  // Debug dump of the index words and the variables with their entry counts.
  nlohmann::json index_json() const;

  std::unordered_map<std::string, int> lookup;
};

MomentSdp build_moment_sdp(const Graph& g, int c, int N, const MomentOptions& opts = {});

enum class QcVerdict { ConsistentWithColouring, CertifiedNoColouring };
std::string to_string(QcVerdict v);

struct QcOptions {
  double tol = 1e-6;
  // The objective carries a constant of order n c^2, so a value resolved to
  // 1e-6 needs the first-order path run to 1e-8 rather than its 1e-7 default.
  SolveOptions solver = [] {
    SolveOptions s;
    s.admm_tol = 1e-8;
    return s;
  }();
  MomentOptions moment;
};

struct QcResult {
  double min_value = 0;
  QcVerdict verdict = QcVerdict::ConsistentWithColouring;
  SdpSolution solution;
  int order = 0;
  int num_variables = 0;
  double seconds = 0;
  bool solved() const { return solution.status == SdpStatus::Optimal; }
};

// Certified iff the solve is Optimal and min_value > tol. min_value is the
// smaller of the two objective estimates (primal and dual side), so a
// certificate never rests on the optimistic one.
QcResult qc_level_bound(const Graph& g, int c, int N, const QcOptions& opts = {});

}  // namespace chromabound
