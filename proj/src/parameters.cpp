#include "chromabound/parameters.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "chromabound/cliques.hpp"
#include "chromabound/errors.hpp"
#include "chromabound/moment.hpp"

namespace chromabound {

namespace {

// constant + sum coef * y
struct Affine {
  double constant = 0;
  std::vector<std::pair<int, double>> terms;
};

// Builds "maximize b^T y subject to C - sum y_k A_k psd" from affine entries
// of one dense block plus affine inequalities >= 0 collected in a diagonal block.
class DualFormBuilder {
 public:
  DualFormBuilder(int dim, int num_vars) {
    p_.blocks = {dim};
    p_.constraints.assign(num_vars, {});
    p_.rhs.assign(num_vars, 0.0);
  }

  void entry(int r, int s, const Affine& a) {
    if (r > s) std::swap(r, s);
    if (a.constant != 0) p_.objective.push_back({0, r, s, a.constant});
    for (auto [k, c] : a.terms) p_.constraints[k].push_back({0, r, s, -c});
  }

  void inequality(Affine a) { rows_.push_back(std::move(a)); }

  void maximize(int var, double coef) { p_.rhs[var] = coef; }

  SdpProblem finish() {
    std::vector<Affine> kept;
    for (auto& r : rows_) {
      if (!r.terms.empty()) kept.push_back(std::move(r));
      else if (r.constant < -1e-12) throw std::logic_error("constant inequality is violated");
    }
    if (!kept.empty()) {
      const int blk = static_cast<int>(p_.blocks.size());
      p_.blocks.push_back(-static_cast<int>(kept.size()));
      for (int t = 0; t < static_cast<int>(kept.size()); ++t) {
        if (kept[t].constant != 0) p_.objective.push_back({blk, t, t, kept[t].constant});
        for (auto [k, c] : kept[t].terms) p_.constraints[k].push_back({blk, t, t, -c});
      }
    }
    return std::move(p_);
  }

 private:
  SdpProblem p_;
  std::vector<Affine> rows_;
};

SdpValue finish_min(SdpProblem problem, const SolveOptions& opts) {
  SdpValue out;
  SdpSolution s = solve(problem, opts);
  out.value = -s.dual_value;
  out.gap = s.gap;
  out.status = s.status;
  out.iterations = s.iterations;
  out.problem = std::move(problem);
  return out;
}

// The interior-point optimum is only accurate to the solver tolerance.
// Solving the complementary-slackness equations on the supports of the
// primal weights and dual prices gives the vertex solution to machine
// precision; it is kept only if both sides check out feasible.
void polish_covering_lp(const Eigen::MatrixXd& M, const LpSolution& lp, FractionalResult& r) {
  const int n = static_cast<int>(M.rows()), k = static_cast<int>(M.cols());
  const double cut = 1e-6;
  std::vector<int> cols, rows;
  for (int s = 0; s < k; ++s)
    if (lp.x(s) > cut) cols.push_back(s);
  for (int v = 0; v < n; ++v)
    if (lp.y(v) > cut) rows.push_back(v);
  if (cols.empty() || rows.empty()) return;

  // Tight rows: sum over supported sets of w = 1. Supported sets: price sum = 1.
  Eigen::MatrixXd P(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) P(i, j) = M(rows[i], cols[j]);
  const Eigen::VectorXd ws = P.completeOrthogonalDecomposition().solve(Eigen::VectorXd::Ones(rows.size()));
  const Eigen::VectorXd ys =
      P.transpose().completeOrthogonalDecomposition().solve(Eigen::VectorXd::Ones(cols.size()));

  const double eps = 1e-12;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k), y = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < cols.size(); ++j) w(cols[j]) = ws(j);
  for (std::size_t i = 0; i < rows.size(); ++i) y(rows[i]) = ys(i);
  if (w.minCoeff() < -eps || y.minCoeff() < -eps) return;
  if ((M * w).minCoeff() < 1 - eps || (M.transpose() * y).maxCoeff() > 1 + eps) return;
  const double primal = w.sum(), dual = y.sum();
  if (std::abs(primal - dual) > 1e-10 * std::max(1.0, primal)) return;
  r.value = primal;
  r.gap = std::abs(primal - dual) / (1 + primal);
  r.weights.assign(w.data(), w.data() + k);
}

}  // namespace

FractionalResult fractional_chromatic(const Graph& g, std::size_t cap, const SolveOptions& opts) {
  FractionalResult r;
  const int n = g.num_vertices();
  if (n == 0) {
    r.exact = Rational{0, 1};
    return r;
  }
  r.sets = maximal_independent_sets(g, cap);
  const int k = static_cast<int>(r.sets.size());
  // Columns: one weight per set, then one surplus per vertex.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, k + n);
  for (int s = 0; s < k; ++s)
    for (int v : r.sets[s]) A(v, s) = 1;
  for (int v = 0; v < n; ++v) A(v, k + v) = -1;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + n);
  c.head(k).setOnes();
  LpSolution lp = solve_lp(c, A, Eigen::VectorXd::Ones(n), opts);
  r.status = lp.status;
  r.value = lp.value;
  r.gap = lp.gap;
  r.weights.assign(lp.x.data(), lp.x.data() + k);
  if (lp.status != SdpStatus::Optimal) return r;
  polish_covering_lp(A.leftCols(k), lp, r);
  r.exact = rationalize(r.value, 64, 1e-6);
  return r;
}

SdpProblem theta_plus_bar_problem(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("theta_plus_bar_problem: empty graph");
  // y_0 = t, then one slack u_vw >= 0 per non-adjacent pair: Z_vw = -1 + u_vw.
  std::vector<Edge> free_pairs;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (!g.adjacent(v, w)) free_pairs.emplace_back(v, w);
  DualFormBuilder b(n, 1 + static_cast<int>(free_pairs.size()));
  for (int v = 0; v < n; ++v) b.entry(v, v, {-1.0, {{0, 1.0}}});
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (g.adjacent(v, w)) b.entry(v, w, {-1.0, {}});
  for (int k = 0; k < static_cast<int>(free_pairs.size()); ++k) {
    b.entry(free_pairs[k].first, free_pairs[k].second, {-1.0, {{k + 1, 1.0}}});
    b.inequality({0.0, {{k + 1, 1.0}}});
  }
  b.maximize(0, -1.0);
  return b.finish();
}

SdpValue theta_plus_bar(const Graph& g, const SolveOptions& opts) {
  if (g.num_vertices() == 0) return {};
  return finish_min(theta_plus_bar_problem(g), opts);
}

SdpProblem xi_sdp_problem(const Graph& g, CliqueFamily family, std::size_t cap) {
  const int n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("xi_sdp_problem: empty graph");
  const auto cliques = family == CliqueFamily::MaximalOnly ? maximal_cliques(g, cap) : all_cliques(g, cap);

  // y_0 = Y_00, then Y_vw for every non-adjacent pair v < w.
  std::vector<int> var(static_cast<std::size_t>(n) * n, -1);
  int m = 1;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (!g.adjacent(v, w)) var[v * n + w] = var[w * n + v] = m++;
  auto Y = [&](int v, int w) -> Affine {
    if (v == w) return {1.0, {}};
    const int k = var[v * n + w];
    if (k < 0) return {0.0, {}};
    return {0.0, {{k, 1.0}}};
  };

  DualFormBuilder b(n + 1, m);
  b.entry(0, 0, {0.0, {{0, 1.0}}});
  for (int v = 0; v < n; ++v) {
    b.entry(0, v + 1, {1.0, {}});
    b.entry(v + 1, v + 1, {1.0, {}});
    for (int w = v + 1; w < n; ++w) {
      const Affine a = Y(v, w);
      if (!a.terms.empty()) {
        b.entry(v + 1, w + 1, a);
        b.inequality(a);
      }
    }
  }
  auto accumulate = [](Affine& into, const Affine& a, double sign) {
    into.constant += sign * a.constant;
    for (auto [k, c] : a.terms) into.terms.emplace_back(k, sign * c);
  };
  for (const auto& S : cliques)
    for (int w = 0; w < n; ++w) {
      Affine row{1.0, {}};
      for (int v : S) accumulate(row, Y(v, w), -1.0);
      b.inequality(std::move(row));
    }
  for (std::size_t s = 0; s < cliques.size(); ++s)
    for (std::size_t t = s; t < cliques.size(); ++t) {
      Affine row{-static_cast<double>(cliques[s].size() + cliques[t].size()), {{0, 1.0}}};
      for (int v : cliques[s])
        for (int w : cliques[t]) accumulate(row, Y(v, w), 1.0);
      b.inequality(std::move(row));
    }
  b.maximize(0, -1.0);
  return b.finish();
}

SdpValue xi_sdp(const Graph& g, CliqueFamily family, const SolveOptions& opts, std::size_t cap) {
  if (g.num_vertices() == 0) return {};
  return finish_min(xi_sdp_problem(g, family, cap), opts);
}

BlockLpResult projective_rank_block_lp(const std::vector<int>& block_dims,
                                       const std::vector<std::vector<int>>& ranks,
                                       const SolveOptions& opts) {
  const int L = static_cast<int>(block_dims.size());
  if (L == 0) throw std::invalid_argument("projective_rank_block_lp: no blocks");
  if (ranks.empty()) throw std::invalid_argument("projective_rank_block_lp: no vertices");
  for (int d : block_dims)
    if (d < 1) throw std::invalid_argument("projective_rank_block_lp: block dimensions must be >= 1");
  for (std::size_t v = 0; v < ranks.size(); ++v) {
    if (static_cast<int>(ranks[v].size()) != L)
      throw std::invalid_argument("projective_rank_block_lp: vertex " + std::to_string(v) + " has " +
                                  std::to_string(ranks[v].size()) + " ranks for " +
                                  std::to_string(L) + " blocks");
    for (int l = 0; l < L; ++l)
      if (ranks[v][l] < 0 || ranks[v][l] > block_dims[l])
        throw std::invalid_argument("projective_rank_block_lp: rank " + std::to_string(ranks[v][l]) +
                                    " of vertex " + std::to_string(v) + " outside [0, " +
                                    std::to_string(block_dims[l]) + "]");
  }

  // t = r_0 . q, so the equalities are d . q = 1 and (r_v - r_0) . q = 0.
  const int n = static_cast<int>(ranks.size());
  Eigen::MatrixXd A(n, L);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < L; ++l) A(0, l) = block_dims[l];
  b(0) = 1;
  for (int v = 1; v < n; ++v)
    for (int l = 0; l < L; ++l) A(v, l) = ranks[v][l] - ranks[0][l];

  Eigen::MatrixXd Ab(n, L + 1);
  Ab << A, b;
  const auto rankA = Eigen::FullPivLU<Eigen::MatrixXd>(A).rank();
  if (Eigen::FullPivLU<Eigen::MatrixXd>(Ab).rank() > rankA)
    throw std::domain_error("projective_rank_block_lp: the rank data admit no common value");
  // Keep a maximal independent subset of rows so the LP has full row rank.
  std::vector<int> keep;
  Eigen::MatrixXd basis(0, L);
  for (int v = 0; v < n; ++v) {
    Eigen::MatrixXd trial(basis.rows() + 1, L);
    trial << basis, A.row(v);
    if (Eigen::FullPivLU<Eigen::MatrixXd>(trial).rank() > basis.rows()) {
      basis = trial;
      keep.push_back(v);
    }
  }
  Eigen::MatrixXd Ak(keep.size(), L);
  Eigen::VectorXd bk(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Ak.row(i) = A.row(keep[i]);
    bk(i) = b(keep[i]);
  }
  Eigen::VectorXd c(L);
  for (int l = 0; l < L; ++l) c(l) = -ranks[0][l];

  LpSolution lp = solve_lp(c, Ak, bk, opts);
  if (lp.status == SdpStatus::PrimalInfeasible)
    throw std::domain_error("projective_rank_block_lp: the rank data admit no common value");
  BlockLpResult r;
  r.status = lp.status;
  r.q.assign(lp.x.data(), lp.x.data() + L);
  r.t = -lp.value;
  r.ratio = r.t > 0 ? 1.0 / r.t : std::numeric_limits<double>::infinity();
  r.t_exact = rationalize(r.t, 1'000'000, 1e-7);
  for (double q : r.q) r.q_exact.push_back(rationalize(q, 1'000'000, 1e-7));
  return r;
}

nlohmann::json ParameterReport::to_json() const {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [name, e] : params) {
    nlohmann::json j = {{"value", e.value ? nlohmann::json(*e.value) : nlohmann::json(nullptr)},
                        {"gap", e.gap},
                        {"status", e.status},
                        {"seconds", e.seconds}};
    if (!e.exact.empty()) j["exact"] = e.exact;
    if (!e.note.empty()) j["note"] = e.note;
    p[name] = std::move(j);
  }
  return {{"graph", graph}, {"params", p}, {"violations", violations}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string ParameterReport::to_csv(bool header) const {
  std::ostringstream os;
  os.precision(17);
  if (header) os << "graph,param,value,gap,status,seconds,exact,note\n";
  for (const auto& [name, e] : params) {
    os << csv_field(graph) << ',' << csv_field(name) << ',';
    if (e.value) os << *e.value;
    os << ',' << e.gap << ',' << csv_field(e.status) << ',' << e.seconds << ',' << csv_field(e.exact)
       << ',' << csv_field(e.note) << '\n';
  }
  return os.str();
}

std::vector<std::string> ordering_violations(const std::map<std::string, ParameterEntry>& params) {
  const char* chain[] = {"theta_plus_bar", "xi_sdp", "fractional_chromatic", "chromatic_number"};
  std::vector<std::string> out;
  for (int i = 0; i + 1 < 4; ++i) {
    auto lo = params.find(chain[i]), hi = params.find(chain[i + 1]);
    if (lo == params.end() || hi == params.end() || !lo->second.value || !hi->second.value) continue;
    if (*lo->second.value > *hi->second.value + kOrderingSlack) {
      std::ostringstream os;
      os.precision(10);
      os << chain[i] << " <= " << chain[i + 1] << " fails: " << *lo->second.value << " > "
         << *hi->second.value;
      out.push_back(os.str());
    }
  }
  return out;
}

ParameterReport parameter_table(const Graph& g, const ParameterOptions& opts) {
  ParameterReport report;
  report.graph = g.name();
  auto run = [&](const std::string& name, auto&& compute) {
    ParameterEntry e;
    const auto start = std::chrono::steady_clock::now();
    try {
      compute(e);
    } catch (const LimitExceeded& ex) {
      e.value.reset();
      e.status = std::string("LimitExceeded: ") + ex.what();
    } catch (const std::exception& ex) {
      e.value.reset();
      e.status = std::string("Error: ") + ex.what();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.params[name] = std::move(e);
  };
  auto from_sdp = [](ParameterEntry& e, const SdpValue& s) {
    e.value = s.value;
    e.gap = s.gap;
    e.status = to_string(s.status);
  };

  run("theta_plus_bar", [&](ParameterEntry& e) { from_sdp(e, theta_plus_bar(g, opts.solver)); });
  if (const auto& th = report.params["theta_plus_bar"]; th.value)
    run("chi_vect", [&](ParameterEntry& e) {
      e.value = std::ceil(*th.value - kOrderingSlack);
      e.status = th.status;
    });
  run("xi_sdp", [&](ParameterEntry& e) { from_sdp(e, xi_sdp(g, opts.clique_family, opts.solver, opts.clique_cap)); });
  run("fractional_chromatic", [&](ParameterEntry& e) {
    FractionalResult f = fractional_chromatic(g, opts.clique_cap, opts.solver);
    e.value = f.value;
    e.gap = f.gap;
    e.status = to_string(f.status);
    if (f.exact) e.exact = to_string(*f.exact);
  });
  run("clique_number", [&](ParameterEntry& e) {
    e.value = clique_number(g);
    e.status = "Exact";
  });
  run("independence_number", [&](ParameterEntry& e) {
    e.value = independence_number(g);
    e.status = "Exact";
  });
  run("chromatic_number", [&](ParameterEntry& e) {
    e.value = chromatic_number(g, opts.exact_vertex_limit);
    e.status = "Exact";
  });
  for (int c : opts.qc_colours)
    run("level" + std::to_string(opts.qc_level) + "_bound_c" + std::to_string(c), [&](ParameterEntry& e) {
      QcOptions qo;
      qo.solver.tol = opts.solver.tol;
      qo.solver.method = opts.solver.method;
      qo.moment.word_cap = opts.word_cap;
      QcResult q = qc_level_bound(g, c, opts.qc_level, qo);
      e.value = q.min_value;
      e.gap = q.solution.gap;
      e.status = to_string(q.solution.status);
      e.note = to_string(q.verdict);
    });

  report.violations = ordering_violations(report.params);
  return report;
}

}  // namespace chromabound
