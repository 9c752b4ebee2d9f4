#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromabound/graph.hpp"
#include "chromabound/rational.hpp"
#include "chromabound/sdp.hpp"
#include "json.hpp"

namespace chromabound {

struct FractionalResult {
  double value = 0;
  std::optional<Rational> exact;  // when the denominator is at most 64
  std::vector<VertexSet> sets;    // maximal independent sets
  std::vector<double> weights;    // optimal weight per set
  SdpStatus status = SdpStatus::Optimal;
  double gap = 0;
};

// LP over maximal independent sets: min sum w_S with every vertex covered
// by total weight >= 1.
FractionalResult fractional_chromatic(const Graph& g, std::size_t cap = 1'000'000,
                                      const SolveOptions& opts = {});

struct SdpValue {
  double value = 0;
  double gap = 0;
  SdpStatus status = SdpStatus::Optimal;
  int iterations = 0;
  SdpProblem problem;  // kept for export
};

// min t such that some symmetric Z psd has Z_vv = t - 1, Z_vw = -1 on edges
// and Z_vw >= -1 elsewhere. Its ceiling is the vector chromatic number.
SdpValue theta_plus_bar(const Graph& g, const SolveOptions& opts = {});

enum class CliqueFamily { MaximalOnly, AllCliques };

// min Y_00 over symmetric psd Y of order n+1 (row 0 is the extra index) with
// Y >= 0, Y_0v = Y_vv = 1, Y_vw = 0 on edges,
//   sum_{v in S} Y_vw <= 1                         for every clique S and vertex w,
//   Y_00 + sum_{v in S, w in T} Y_vw >= |S| + |T|   for every pair of cliques S, T.
// Maximal cliques suffice: Y >= 0 makes the row sums of sub-cliques smaller,
// and the pair bound for S + {v} together with the row-sum bound on column v
// implies the bound for S.
SdpValue xi_sdp(const Graph& g, CliqueFamily family = CliqueFamily::MaximalOnly,
                const SolveOptions& opts = {}, std::size_t cap = 1'000'000);

// The problems behind theta_plus_bar and xi_sdp as passed to solve(). Their
// dual optimum is minus the parameter, so an SDPA-family solver reports the
// parameter itself as its objective. Throw std::invalid_argument for n = 0.
SdpProblem theta_plus_bar_problem(const Graph& g);
SdpProblem xi_sdp_problem(const Graph& g, CliqueFamily family = CliqueFamily::MaximalOnly,
                          std::size_t cap = 1'000'000);

struct BlockLpResult {
  double t = 0;      // common normalized rank
  double ratio = 0;  // d / r = 1 / t
  std::vector<double> q;
  std::optional<Rational> t_exact;
  std::vector<std::optional<Rational>> q_exact;
  SdpStatus status = SdpStatus::Optimal;
};

// max t subject to sum_l q_l d_l = 1, sum_l q_l rank_v[l] = t for all v,
// q >= 0. ranks[v][l] is the rank of vertex v's projection in block l.
// Throws std::invalid_argument on malformed data and std::domain_error when
// no weighting equalizes the vertices.
BlockLpResult projective_rank_block_lp(const std::vector<int>& block_dims,
                                       const std::vector<std::vector<int>>& ranks,
                                       const SolveOptions& opts = {});

struct ParameterEntry {
  std::optional<double> value;  // empty when the computation failed
  double gap = 0;
  std::string status;
  double seconds = 0;
  std::string exact;  // rational form when known
  std::string note;   // verdict of a level bound
};

struct ParameterOptions {
  CliqueFamily clique_family = CliqueFamily::MaximalOnly;
  int exact_vertex_limit = 20;
  std::size_t clique_cap = 1'000'000;  // cliques and independent sets
  std::size_t word_cap = 2000;         // moment matrix order for level bounds
  // Level-N bound for every c in qc_colours (skipped when empty).
  int qc_level = 2;
  std::vector<int> qc_colours;
  SolveOptions solver;
};

struct ParameterReport {
  std::string graph;
  std::map<std::string, ParameterEntry> params;
  std::vector<std::string> violations;

  nlohmann::json to_json() const;
  // graph,param,value,gap,status,seconds,exact,note
  std::string to_csv(bool header = true) const;
};

constexpr double kOrderingSlack = 1e-5;

// Messages for each adjacent pair of
// theta_plus_bar <= xi_sdp <= fractional_chromatic <= chromatic_number
// that fails by more than kOrderingSlack. Missing values are skipped.
std::vector<std::string> ordering_violations(const std::map<std::string, ParameterEntry>& params);

// Computes every parameter, records failures per entry and flags ordering
// violations.
ParameterReport parameter_table(const Graph& g, const ParameterOptions& opts = {});

}  // namespace chromabound
