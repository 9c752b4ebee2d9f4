#include "chromabound/moment.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

namespace chromabound {

namespace {

std::string key_of(const Word& w, int n, int c) {
  std::string k;
  k.reserve(2 * w.letters.size());
  for (const auto& g : w.letters) {
    const int code = (static_cast<int>(g.family) * n + g.vertex) * c + g.outcome;
    k.push_back(static_cast<char>(code & 0xff));
    k.push_back(static_cast<char>(code >> 8));
  }
  return k;
}

Word representative(const Word& w) {
  Word a = adjoint(w);
  return a < w ? a : w;
}

// e_{v,i} as a combination of basis words: itself, or 1 - sum of the others.
std::vector<std::pair<Word, double>> expand(Generator g, int c) {
  if (g.outcome < c - 1) return {{Word{{g}}, 1.0}};
  std::vector<std::pair<Word, double>> out{{Word::one(), 1.0}};
  for (int i = 0; i < c - 1; ++i) out.push_back({Word{{{g.family, g.vertex, i}}}, -1.0});
  return out;
}

}  // namespace

double LinearForm::evaluate(const std::vector<double>& y) const {
  double s = constant;
  for (auto [k, a] : terms) s += a * y[k];
  return s;
}

double eval_graph_functional(const Graph& g, int c, const Correlation& p) {
  if (!p.well_shaped() || p.n != g.num_vertices() || p.c != c)
    throw std::invalid_argument("graph functional: correlation shape (" + std::to_string(p.n) +
                                "," + std::to_string(p.c) + ") does not match graph order " +
                                std::to_string(g.num_vertices()) + " and c = " + std::to_string(c));
  const int n = g.num_vertices();
  double s = 0;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) s += p(v, i, v, j);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (g.adjacent(v, w))
        for (int i = 0; i < c; ++i) s += p(v, i, w, i);
  return s;
}

int MomentSdp::entry(int r, int s) const {
  return entry_variable[static_cast<std::size_t>(r) * index.size() + s];
}

int MomentSdp::variable_of(const Word& w) const {
  if (w.zero) return kPinnedZero;
  if (w.is_one()) return kPinnedOne;
  auto it = lookup.find(key_of(representative(w), n, c));
  if (it == lookup.end())
    throw std::out_of_range("word " + to_string(w) + " is not a moment of this relaxation");
  return it->second;
}

LinearForm MomentSdp::correlation_entry(int v, int i, int w, int j) const {
  std::map<int, double> acc;
  LinearForm out;
  for (const auto& [a, ca] : expand(e(v, i), c))
    for (const auto& [b, cb] : expand(f(w, j), c)) {
      const int var = variable_of(multiply(a, b));
      if (var == kPinnedOne) out.constant += ca * cb;
      else if (var >= 0) acc[var] += ca * cb;
    }
  for (auto [k, a] : acc)
    if (a != 0) out.terms.emplace_back(k, a);
  return out;
}

Eigen::MatrixXd MomentSdp::moment_matrix(const std::vector<double>& y) const {
  const int d = order();
  Eigen::MatrixXd M(d, d);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s) {
      const int k = entry(r, s);
      M(r, s) = k >= 0 ? y[k] : (k == kPinnedOne ? 1.0 : 0.0);
    }
  return M;
}

nlohmann::json MomentSdp::index_json() const {
  std::vector<int> multiplicity(variables.size(), 0);
  for (int k : entry_variable)
    if (k >= 0) ++multiplicity[k];
  nlohmann::json words = nlohmann::json::array(), vars = nlohmann::json::array();
  for (const auto& w : index) words.push_back(to_string(w));
  for (std::size_t k = 0; k < variables.size(); ++k)
    vars.push_back({{"id", k}, {"word", to_string(variables[k])}, {"entries", multiplicity[k]}});
  nlohmann::json obj = nlohmann::json::array();
  for (auto [k, a] : objective.terms) obj.push_back({{"id", k}, {"coefficient", a}});
  return {{"n", n},
          {"c", c},
          {"level", level},
          {"order", order()},
          {"index", words},
          {"variables", vars},
          {"objective", {{"constant", objective.constant}, {"terms", obj}}}};
}

MomentSdp build_moment_sdp(const Graph& g, int c, int N, const MomentOptions& opts) {
  if (c < 1) throw std::invalid_argument("moment relaxation: c must be >= 1");
  if (N < 1) throw std::invalid_argument("moment relaxation: level N must be >= 1");
  MomentSdp m;
  m.level = N;
  m.n = g.num_vertices();
  m.c = c;
  WordOptions wo;
  wo.cap = opts.word_cap;
  wo.max_outcome = c - 1;
  m.index = enumerate_words(m.n, c, N, wo);

  const int d = m.order();
  m.entry_variable.assign(static_cast<std::size_t>(d) * d, MomentSdp::kPinnedZero);
  std::vector<std::vector<std::pair<int, int>>> positions;
  std::vector<Word> adj(d);
  for (int s = 0; s < d; ++s) adj[s] = adjoint(m.index[s]);
  for (int r = 0; r < d; ++r)
    for (int s = r; s < d; ++s) {
      // Entry (alpha, beta) = s(beta* alpha).
      Word w = multiply(adj[s], m.index[r]);
      int k;
      if (w.zero) {
        k = MomentSdp::kPinnedZero;
      } else if (w.is_one()) {
        k = MomentSdp::kPinnedOne;
      } else {
        Word rep = representative(w);
        auto [it, fresh] = m.lookup.emplace(key_of(rep, m.n, c), static_cast<int>(m.variables.size()));
        if (fresh) {
          m.variables.push_back(std::move(rep));
          positions.emplace_back();
        }
        k = it->second;
        positions[k].emplace_back(r, s);
      }
      m.entry_variable[static_cast<std::size_t>(r) * d + s] = k;
      m.entry_variable[static_cast<std::size_t>(s) * d + r] = k;
    }

  const int nv = static_cast<int>(m.variables.size());
  std::vector<double> l(nv, 0.0);
  auto add_form = [&](const LinearForm& f) {
    m.objective.constant += f.constant;
    for (auto [k, a] : f.terms) l[k] += a;
  };
  const int n = m.n;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) add_form(m.correlation_entry(v, i, v, j));
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (g.adjacent(v, w))
        for (int i = 0; i < c; ++i) add_form(m.correlation_entry(v, i, w, i));
  for (int k = 0; k < nv; ++k)
    if (l[k] != 0) m.objective.terms.emplace_back(k, l[k]);

  SdpProblem& p = m.problem;
  p.blocks = {d};
  p.objective.push_back({0, 0, 0, 1.0});
  p.constraints.assign(nv, {});
  p.rhs.assign(nv, 0.0);
  for (int k = 0; k < nv; ++k) {
    for (auto [r, s] : positions[k]) p.constraints[k].push_back({0, r, s, -1.0});
    p.rhs[k] = -l[k];
  }

  m.has_nonnegativity_block = opts.explicit_nonnegativity.value_or(N == 1);
  if (m.has_nonnegativity_block) {
    std::vector<LinearForm> rows;
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < c; ++i)
        for (int w = 0; w < n; ++w)
          for (int j = 0; j < c; ++j) {
            LinearForm f = m.correlation_entry(v, i, w, j);
            if (!f.terms.empty()) rows.push_back(std::move(f));
          }
    if (!rows.empty()) {
      const int blk = static_cast<int>(p.blocks.size());
      p.blocks.push_back(-static_cast<int>(rows.size()));
      for (int t = 0; t < static_cast<int>(rows.size()); ++t) {
        if (rows[t].constant != 0) p.objective.push_back({blk, t, t, rows[t].constant});
        for (auto [k, a] : rows[t].terms) p.constraints[k].push_back({blk, t, t, -a});
      }
    } else {
      m.has_nonnegativity_block = false;
    }
  }
  return m;
}

std::string to_string(QcVerdict v) {
  return v == QcVerdict::CertifiedNoColouring ? "CertifiedNoColouring" : "ConsistentWithColouring";
}

QcResult qc_level_bound(const Graph& g, int c, int N, const QcOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  MomentSdp m = build_moment_sdp(g, c, N, opts.moment);
  SolveOptions so = opts.solver;
  const bool admm = so.method == SdpMethod::Admm ||
                    (so.method == SdpMethod::Auto && m.problem.num_constraints() > so.auto_admm_threshold);
  // The first-order path cannot reach interior-point accuracy in reasonable
  // time; it is judged at its own stopping tolerance.
  if (admm) so.tol = std::max(so.tol, so.admm_tol);

  QcResult r;
  r.order = m.order();
  r.num_variables = static_cast<int>(m.variables.size());
  r.solution = solve(m.problem, so);
  const double lower = m.objective.constant - std::max(r.solution.primal_value, r.solution.dual_value);
  r.min_value = lower;
  r.verdict = r.solved() && r.min_value > opts.tol ? QcVerdict::CertifiedNoColouring
                                                   : QcVerdict::ConsistentWithColouring;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace chromabound
