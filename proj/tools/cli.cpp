#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "chromabound/cliques.hpp"
#include "chromabound/errors.hpp"
#include "chromabound/graph_io.hpp"
#include "chromabound/moment.hpp"
#include "chromabound/parameters.hpp"
#include "chromabound/realization.hpp"
#include "chromabound/sdpa.hpp"
#include "json.hpp"

namespace chromabound::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options shared by every subcommand.
struct RunConfig {
  std::string gen, graph6, dimacs;
  std::string format = "text";
  std::string output;
  double tol = 1e-8;
  std::string method = "auto";
  std::size_t clique_cap = kDefaultCliqueCap;
  std::size_t word_cap = 2000;
  int jobs = 1;

  SolveOptions solver() const {
    SolveOptions s;
    s.tol = tol;
    s.method = method == "ipm" ? SdpMethod::InteriorPoint : method == "admm" ? SdpMethod::Admm : SdpMethod::Auto;
    return s;
  }
};

struct NamedGraph {
  Graph graph;
  std::string graph6;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool graph_source) {
  if (graph_source) {
    auto* gen = cmd->add_option("--gen", cfg.gen, "generator, e.g. cycle:5, kneser:5:2, cycle:5*complete:3");
    auto* g6 = cmd->add_option("--graph6", cfg.graph6, "file with one graph6 string per line");
    auto* dim = cmd->add_option("--dimacs", cfg.dimacs, "DIMACS edge file");
    gen->excludes(g6)->excludes(dim);
    g6->excludes(dim);
  }
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("-o,--output", cfg.output, "write the report to this file");
  cmd->add_option("--tol", cfg.tol, "solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--method", cfg.method, "SDP method")->check(CLI::IsMember({"auto", "ipm", "admm"}));
  cmd->add_option("--clique-cap", cfg.clique_cap, "cap on enumerated cliques and independent sets")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--word-cap", cfg.word_cap, "cap on the moment matrix order")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", cfg.jobs, "parallel jobs")->check(CLI::PositiveNumber);
}

std::string read_input(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw MissingInput("cannot open " + path);
  return read_text_file(path);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<NamedGraph> load_graphs(const RunConfig& cfg) {
  const int sources = !cfg.gen.empty() + !cfg.graph6.empty() + !cfg.dimacs.empty();
  if (sources != 1) throw UsageError("exactly one of --gen, --graph6, --dimacs is required");
  std::vector<NamedGraph> out;
  if (!cfg.gen.empty()) {
    try {
      Graph g = generate(cfg.gen).with_name(cfg.gen);
      out.push_back({g, encode_graph6(g)});
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--gen: ") + e.what());
    }
  } else if (!cfg.graph6.empty()) {
    const auto lines = split_lines(read_input(cfg.graph6));
    for (std::size_t k = 0; k < lines.size(); ++k) {
      if (lines[k].find_first_not_of(" \t") == std::string::npos) continue;
      try {
        Graph g = parse_graph6(lines[k]);
        const std::string token = encode_graph6(g);
        out.push_back({g.with_name(token), token});
      } catch (const ParseError& e) {
        throw UsageError(cfg.graph6 + " line " + std::to_string(k + 1) + ": " + e.what());
      }
    }
    if (out.empty()) throw UsageError(cfg.graph6 + " contains no graphs");
  } else {
    try {
      Graph g = parse_dimacs(read_input(cfg.dimacs)).with_name(fs::path(cfg.dimacs).filename().string());
      out.push_back({g, encode_graph6(g)});
    } catch (const ParseError& e) {
      throw UsageError(cfg.dimacs + ": " + e.what());
    }
  }
  return out;
}

NamedGraph load_single_graph(const RunConfig& cfg) {
  auto graphs = load_graphs(cfg);
  if (graphs.size() != 1) throw UsageError("this command takes a single graph");
  return graphs.front();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << text;
}

std::string fixed(double x, int digits = 8) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// Statuses that count as a successful computation. A configured cap being
// hit is reported in the table but is not a solver failure.
bool entry_failed(const ParameterEntry& e) {
  if (e.status == "Optimal" || e.status == "Exact") return false;
  if (e.status.rfind("LimitExceeded", 0) == 0) return false;
  return true;
}

// ---------------------------------------------------------------- params

struct ParamsArgs {
  std::string clique_family = "maximal";
  int exact_limit = 20;
  int qc_level = 2;
  std::vector<int> qc_colors;
};

int cmd_params(const RunConfig& cfg, const ParamsArgs& a, std::ostream& out) {
  const auto graphs = load_graphs(cfg);
  ParameterOptions po;
  po.clique_family = a.clique_family == "all" ? CliqueFamily::AllCliques : CliqueFamily::MaximalOnly;
  po.exact_vertex_limit = a.exact_limit;
  po.clique_cap = cfg.clique_cap;
  po.word_cap = cfg.word_cap;
  po.qc_level = a.qc_level;
  po.qc_colours = a.qc_colors;
  po.solver = cfg.solver();

  bool failed = false, violated = false;
  json reports = json::array();
  std::ostringstream text;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const ParameterReport r = parameter_table(graphs[k].graph, po);
    for (const auto& [name, e] : r.params) failed = failed || entry_failed(e);
    violated = violated || !r.violations.empty();
    if (cfg.format == "json") {
      json j = r.to_json();
      j["graph6"] = graphs[k].graph6;
      j["n"] = graphs[k].graph.num_vertices();
      reports.push_back(std::move(j));
    } else if (cfg.format == "csv") {
      text << r.to_csv(k == 0);
    } else {
      text << "graph " << r.graph << "  (n=" << graphs[k].graph.num_vertices()
           << ", m=" << graphs[k].graph.num_edges() << ", graph6 " << graphs[k].graph6 << ")\n";
      for (const auto& [name, e] : r.params) {
        text << "  " << std::left << std::setw(24) << name << std::setw(16)
             << (e.value ? fixed(*e.value, 10) : std::string("-")) << e.status;
        if (!e.exact.empty()) text << "  exact " << e.exact;
        if (!e.note.empty()) text << "  " << e.note;
        text << '\n';
      }
      for (const auto& v : r.violations) text << "  ordering violation: " << v << '\n';
    }
  }
  if (cfg.format == "json") text << json{{"command", "params"}, {"reports", reports}}.dump(2) << '\n';
  emit(cfg, text.str(), out);
  if (failed) return kSolverFailure;
  if (violated) return kOrderingViolation;
  return kOk;
}

// ---------------------------------------------------------------- qc-level

constexpr const char* kLevelCaveat =
    "the level-N relaxation admits a superset of the commuting correlations; a value of 0 does not "
    "show that a colouring exists, a positive value rules one out";

int cmd_qc_level(const RunConfig& cfg, int colors, int level, std::ostream& out) {
  const NamedGraph ng = load_single_graph(cfg);
  QcOptions qo;
  qo.solver.tol = cfg.tol;
  qo.solver.method = cfg.solver().method;
  qo.moment.word_cap = cfg.word_cap;
  const QcResult q = qc_level_bound(ng.graph, colors, level, qo);

  std::ostringstream text;
  const std::string status = to_string(q.solution.status);
  if (cfg.format == "json") {
    json j = {{"command", "qc-level"},
              {"graph", ng.graph.name()},
              {"graph6", ng.graph6},
              {"colors", colors},
              {"level", level},
              {"min_value", q.min_value},
              {"verdict", to_string(q.verdict)},
              {"status", status},
              {"gap", q.solution.gap},
              {"order", q.order},
              {"num_variables", q.num_variables},
              {"seconds", q.seconds},
              {"caveat", kLevelCaveat}};
    text << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    text << "graph,colors,level,min_value,verdict,status,gap,order,num_variables,seconds\n"
         << ng.graph.name() << ',' << colors << ',' << level << ',' << fixed(q.min_value, 17) << ','
         << to_string(q.verdict) << ',' << status << ',' << q.solution.gap << ',' << q.order << ','
         << q.num_variables << ',' << q.seconds << '\n';
  } else {
    text << "graph " << ng.graph.name() << ", c = " << colors << ", N = " << level << "\n"
         << "  moment matrix order " << q.order << ", " << q.num_variables << " variables\n"
         << "  min L = " << fixed(q.min_value, 10) << "  (" << status << ", " << fixed(q.seconds, 3)
         << " s)\n"
         << "  verdict: " << to_string(q.verdict) << "\n"
         << "  note: " << kLevelCaveat << '\n';
  }
  emit(cfg, text.str(), out);
  if (!q.solved()) return kSolverFailure;
  return q.verdict == QcVerdict::CertifiedNoColouring ? kCertified : kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string file;
  int colors = 0;
  int max_word_len = 6;
  int samples = 200;
  std::uint64_t seed = 1;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& a, std::ostream& out) {
  Realization r;
  try {
    r = parse_realization(read_input(a.file));
  } catch (const ParseError& e) {
    throw UsageError(a.file + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.file + ": " + e.what());
  }
  if (a.colors != 0 && a.colors != r.c)
    throw UsageError("--colors " + std::to_string(a.colors) + " does not match the realization (c = " +
                     std::to_string(r.c) + ")");
  std::optional<NamedGraph> ng;
  if (!cfg.gen.empty() || !cfg.graph6.empty() || !cfg.dimacs.empty()) {
    ng = load_single_graph(cfg);
    if (ng->graph.num_vertices() != r.n)
      throw UsageError("graph has " + std::to_string(ng->graph.num_vertices()) + " vertices, realization has " +
                       std::to_string(r.n));
  }

  // The default 1e-8 is a solver tolerance; checks use the same value.
  const double tol = cfg.tol;
  json j = {{"command", "verify"}, {"file", a.file}, {"dim", r.dim}, {"n", r.n}, {"c", r.c}};
  std::ostringstream text;
  auto describe = [&](const std::string& title, const CheckReport& rep) {
    j[title] = rep.to_json();
    text << title << (rep.ok ? "  ok" : "  FAILED") << '\n';
    if (!rep.note.empty()) text << "  note: " << rep.note << '\n';
    for (const auto& c : rep.checks)
      text << "  " << (c.passed ? "pass " : rep.ok ? "warn " : "FAIL ") << std::left << std::setw(40) << c.name << std::setw(12)
           << fixed(c.worst, 3) << c.where << '\n';
  };

  bool ok = true;
  const CheckReport rep = verify_realization(r, tol);
  describe("realization", rep);
  ok = ok && rep.ok;

  std::optional<Correlation> p;
  try {
    p = correlation_of(r);
  } catch (const std::domain_error& e) {
    j["correlation_error"] = e.what();
    text << "correlation: " << e.what() << '\n';
    ok = false;
  }
  if (p) {
    const CheckReport cr = verify_correlation(*p, tol);
    describe("correlation", cr);
    ok = ok && cr.ok;
    const double sync = synchronous_residual(*p);
    j["synchronous"] = {{"value", sync <= tol}, {"residual", sync}};
    text << "synchronous  " << (sync <= tol ? "yes" : "no") << "  (residual " << fixed(sync, 3) << ")\n";
    if (ng) {
      const double L = eval_graph_functional(ng->graph, r.c, *p);
      j["functional"] = {{"graph", ng->graph.name()}, {"value", L}, {"zero", std::abs(L) <= tol}};
      text << "graph functional on " << ng->graph.name() << " = " << fixed(L, 10)
           << (std::abs(L) <= tol ? "  (perfect colouring strategy)" : "") << '\n';
    }
    if (sync <= tol && rep.ok) {
      const CheckReport tr = check_tracial_and_reversal(r, a.max_word_len, a.samples, tol, a.seed);
      describe("tracial", tr);
      ok = ok && tr.ok;
    }
    if (ng) describe("zero_products", check_zero_products(r, ng->graph, tol));
  }
  j["ok"] = ok;

  std::string body;
  if (cfg.format == "json") {
    body = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "section,check,worst,where,passed\n";
    for (const char* section : {"realization", "correlation", "tracial", "zero_products"}) {
      if (!j.contains(section)) continue;
      for (const auto& c : j[section]["checks"])
        os << section << ',' << c["name"].get<std::string>() << ',' << c["worst"].get<double>() << ",\""
           << c["where"].get<std::string>() << "\"," << (c["passed"].get<bool>() ? "true" : "false") << '\n';
    }
    body = os.str();
  } else {
    body = text.str() + (ok ? "all checks passed\n" : "verification FAILED\n");
  }
  emit(cfg, body, out);
  return ok ? kOk : kCertified;
}

// ---------------------------------------------------------------- export-sdpa

int cmd_export_sdpa(const RunConfig& cfg, const std::string& target, int colors, int level,
                    const std::string& clique_family, std::ostream& out) {
  const NamedGraph ng = load_single_graph(cfg);
  const CliqueFamily fam = clique_family == "all" ? CliqueFamily::AllCliques : CliqueFamily::MaximalOnly;
  SdpProblem problem;
  std::ostringstream comment;
  comment.precision(17);
  if (target == "xi-sdp") {
    problem = xi_sdp_problem(ng.graph, fam, cfg.clique_cap);
    comment << "xi_sdp of " << ng.graph.name() << "; the SDPA objective equals the parameter";
  } else if (target == "theta-plus") {
    problem = theta_plus_bar_problem(ng.graph);
    comment << "theta_plus_bar of " << ng.graph.name() << "; the SDPA objective equals the parameter";
  } else {
    if (colors < 1 || level < 1) throw UsageError("qc-level export needs --colors >= 1 and --level >= 1");
    MomentOptions mo;
    mo.word_cap = cfg.word_cap;
    const MomentSdp m = build_moment_sdp(ng.graph, colors, level, mo);
    problem = m.problem;
    comment << "level " << level << " bound for " << ng.graph.name() << " with " << colors
            << " colours; min L = " << m.objective.constant << " + SDPA objective";
  }
  const std::string sdpa = export_sdpa_sparse(problem, comment.str());
  if (cfg.output.empty()) {
    out << sdpa;
    return kOk;
  }
  emit(cfg, sdpa, out);
  if (cfg.format == "json") {
    out << json{{"command", "export-sdpa"},
                {"target", target},
                {"graph", ng.graph.name()},
                {"path", cfg.output},
                {"blocks", problem.blocks},
                {"constraints", problem.num_constraints()}}
               .dump(2)
        << '\n';
  } else {
    out << "wrote " << cfg.output << " (" << problem.num_constraints() << " constraints)\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string source;
  int max_vertices = 0;  // 0 means no limit
  bool connected = false;
  double tol = 1e-5;
  std::string checkpoint;
  std::string clique_family = "maximal";
};

struct SweepRow {
  std::string graph6;
  int n = 0;
  std::size_t m = 0;
  std::optional<double> theta, xi, chi_f;
  std::string status;

  json to_json() const {
    auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    json j = {{"graph6", graph6}, {"n", n},           {"m", m},
              {"theta_plus_bar", opt(theta)},    {"xi_sdp", opt(xi)}, {"fractional_chromatic", opt(chi_f)},
              {"status", status}};
    j["diff"] = xi && chi_f ? json(std::abs(*xi - *chi_f)) : json(nullptr);
    return j;
  }
  static SweepRow from_json(const json& j) {
    auto opt = [](const json& x) { return x.is_null() ? std::optional<double>() : x.get<double>(); };
    SweepRow r;
    r.graph6 = j.at("graph6").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<std::size_t>();
    r.theta = opt(j.at("theta_plus_bar"));
    r.xi = opt(j.at("xi_sdp"));
    r.chi_f = opt(j.at("fractional_chromatic"));
    r.status = j.at("status").get<std::string>();
    return r;
  }
};

SweepRow sweep_one(const NamedGraph& ng, const SolveOptions& so, CliqueFamily fam, std::size_t cap) {
  SweepRow row;
  row.graph6 = ng.graph6;
  row.n = ng.graph.num_vertices();
  row.m = ng.graph.num_edges();
  std::vector<std::string> problems;
  try {
    const SdpValue t = theta_plus_bar(ng.graph, so);
    row.theta = t.value;
    if (t.status != SdpStatus::Optimal) problems.push_back("theta_plus_bar " + to_string(t.status));
  } catch (const std::exception& e) {
    problems.push_back(std::string("theta_plus_bar ") + e.what());
  }
  try {
    const SdpValue x = xi_sdp(ng.graph, fam, so, cap);
    row.xi = x.value;
    if (x.status != SdpStatus::Optimal) problems.push_back("xi_sdp " + to_string(x.status));
  } catch (const std::exception& e) {
    problems.push_back(std::string("xi_sdp ") + e.what());
  }
  try {
    const FractionalResult f = fractional_chromatic(ng.graph, cap, so);
    row.chi_f = f.value;
    if (f.status != SdpStatus::Optimal) problems.push_back("fractional_chromatic " + to_string(f.status));
  } catch (const std::exception& e) {
    problems.push_back(std::string("fractional_chromatic ") + e.what());
  }
  if (problems.empty()) {
    row.status = "Optimal";
  } else {
    for (std::size_t k = 0; k < problems.size(); ++k) row.status += (k ? "; " : "") + problems[k];
  }
  return row;
}

// FNV-1a, enough to keep checkpoints of different inputs apart.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

int cmd_sweep(const RunConfig& cfg, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const std::string text = read_input(a.source);
  const CliqueFamily fam = a.clique_family == "all" ? CliqueFamily::AllCliques : CliqueFamily::MaximalOnly;
  const SolveOptions so = cfg.solver();

  std::vector<NamedGraph> graphs;
  int skipped = 0, filtered = 0;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].find_first_not_of(" \t") == std::string::npos) continue;
    try {
      Graph g = parse_graph6(lines[k]);
      if ((a.max_vertices > 0 && g.num_vertices() > a.max_vertices) || (a.connected && !is_connected(g))) {
        ++filtered;
        continue;
      }
      const std::string token = encode_graph6(g);
      graphs.push_back({g.with_name(token), token});
    } catch (const ParseError& e) {
      ++skipped;
      err << "warning: " << a.source << " line " << (k + 1) << " skipped: " << e.what() << '\n';
    }
  }
  std::stable_sort(graphs.begin(), graphs.end(),
                   [](const NamedGraph& x, const NamedGraph& y) { return x.graph6 < y.graph6; });

  // Completed rows from an earlier, possibly interrupted run. The key covers
  // everything that changes the computed values.
  std::string checkpoint = a.checkpoint;
  if (checkpoint.empty()) {
    if (const char* dir = std::getenv("CHROMABOUND_CACHE"); dir && *dir) {
      std::ostringstream key;
      key << text << '\n' << so.tol << ' ' << cfg.method << ' ' << a.clique_family << ' ' << cfg.clique_cap;
      std::ostringstream name;
      name << "sweep-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key.str()) << ".jsonl";
      fs::create_directories(dir);
      checkpoint = (fs::path(dir) / name.str()).string();
    }
  }
  std::map<std::string, SweepRow> done;
  if (!checkpoint.empty() && fs::exists(checkpoint)) {
    std::ifstream in(checkpoint);
    for (std::string line; std::getline(in, line);) {
      // A line cut short by an interruption fails to parse and is recomputed.
      try {
        SweepRow r = SweepRow::from_json(json::parse(line));
        done.emplace(r.graph6, std::move(r));
      } catch (const std::exception&) {
      }
    }
  }
  std::ofstream ck;
  if (!checkpoint.empty()) {
    bool torn = false;
    if (std::ifstream in(checkpoint, std::ios::binary); in && in.seekg(0, std::ios::end).tellg() > 0) {
      in.seekg(-1, std::ios::end);
      torn = in.get() != '\n';
    }
    ck.open(checkpoint, std::ios::app);
    if (!ck) throw UsageError("cannot write checkpoint " + checkpoint);
    // Terminate a line cut short by an interruption.
    if (torn) ck << '\n';
  }

  std::vector<SweepRow> rows(graphs.size());
  std::vector<std::size_t> todo;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    if (auto it = done.find(graphs[k].graph6); it != done.end()) rows[k] = it->second;
    else todo.push_back(k);
  }
  std::atomic<std::size_t> next{0};
  std::mutex ck_mutex;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < todo.size();) {
      const std::size_t k = todo[t];
      rows[k] = sweep_one(graphs[k], so, fam, cfg.clique_cap);
      if (ck.is_open()) {
        std::lock_guard lock(ck_mutex);
        ck << rows[k].to_json().dump() << '\n' << std::flush;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(todo.size())));
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  double max_diff = 0;
  std::string max_graph;
  json exceeding = json::array(), failures = json::array(), violations = json::array(), jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back(r.to_json());
    if (r.status != "Optimal") failures.push_back({{"graph6", r.graph6}, {"status", r.status}});
    if (r.xi && r.chi_f) {
      const double d = std::abs(*r.xi - *r.chi_f);
      if (max_graph.empty() || d > max_diff) {
        max_diff = d;
        max_graph = r.graph6;
      }
      if (d > a.tol) exceeding.push_back(r.graph6);
    }
    if (r.theta && r.xi && *r.theta > *r.xi + kOrderingSlack)
      violations.push_back(r.graph6 + ": theta_plus_bar > xi_sdp");
    if (r.xi && r.chi_f && *r.xi > *r.chi_f + kOrderingSlack)
      violations.push_back(r.graph6 + ": xi_sdp > fractional_chromatic");
  }

  std::ostringstream body;
  if (cfg.format == "json") {
    json j = {{"command", "sweep"},
              {"source", a.source},
              {"graphs", rows.size()},
              {"skipped", skipped},
              {"filtered", filtered},
              {"tolerance", a.tol},
              {"max_diff", max_diff},
              {"max_diff_graph", max_graph},
              {"exceeding", exceeding},
              {"ordering_violations", violations},
              {"failures", failures},
              {"rows", jrows}};
    body << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    body.precision(17);
    body << "graph6,n,m,theta_plus_bar,xi_sdp,fractional_chromatic,diff,status\n";
    for (const auto& r : rows) {
      body << r.graph6 << ',' << r.n << ',' << r.m << ',';
      for (const auto* x : {&r.theta, &r.xi, &r.chi_f}) {
        if (*x) body << **x;
        body << ',';
      }
      if (r.xi && r.chi_f) body << std::abs(*r.xi - *r.chi_f);
      body << ",\"" << r.status << "\"\n";
    }
  } else {
    body << "graphs " << rows.size() << ", skipped " << skipped << ", filtered " << filtered << '\n'
         << "max |xi_sdp - fractional_chromatic| = " << fixed(max_diff, 3)
         << (max_graph.empty() ? std::string() : " at " + max_graph) << '\n'
         << "above tolerance " << fixed(a.tol, 3) << ": " << exceeding.size() << '\n'
         << "ordering violations: " << violations.size() << "\nfailures: " << failures.size() << '\n';
    for (const auto& v : violations) body << "  " << v.get<std::string>() << '\n';
    for (const auto& f : failures)
      body << "  " << f["graph6"].get<std::string>() << ": " << f["status"].get<std::string>() << '\n';
  }
  emit(cfg, body.str(), out);
  if (!failures.empty()) return kSolverFailure;
  if (!violations.empty()) return kOrderingViolation;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds on quantum and fractional chromatic numbers", "chromabound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "chromabound 1.0");

  RunConfig cfg;

  auto* params = app.add_subcommand("params", "table of graph parameters");
  add_common(params, cfg, true);
  ParamsArgs pa;
  params->add_option("--clique-family", pa.clique_family, "cliques used by xi_sdp")
      ->check(CLI::IsMember({"maximal", "all"}));
  params->add_option("--exact-limit", pa.exact_limit, "largest graph for exact chromatic number")
      ->check(CLI::NonNegativeNumber);
  params->add_option("--qc-colors", pa.qc_colors, "also run level bounds for these colour counts")
      ->check(CLI::PositiveNumber);
  params->add_option("--qc-level", pa.qc_level, "level for --qc-colors")->check(CLI::PositiveNumber);

  auto* qc = app.add_subcommand("qc-level", "level-N bound on commuting quantum colourings");
  add_common(qc, cfg, true);
  int colors = 0, level = 0;
  qc->add_option("-c,--colors", colors, "number of colours")->required()->check(CLI::PositiveNumber);
  qc->add_option("-N,--level", level, "hierarchy level")->required()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check a finite-dimensional strategy");
  add_common(verify, cfg, true);
  VerifyArgs va;
  verify->add_option("file", va.file, "realization JSON")->required();
  verify->add_option("-c,--colors", va.colors, "expected number of outcomes")->check(CLI::PositiveNumber);
  verify->add_option("--max-word-len", va.max_word_len, "longest sampled word")->check(CLI::PositiveNumber);
  verify->add_option("--samples", va.samples, "sampled word pairs")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", va.seed, "seed for word sampling");

  auto* exp = app.add_subcommand("export-sdpa", "write an SDP in SDPA sparse format");
  add_common(exp, cfg, true);
  std::string target, exp_family = "maximal";
  int exp_colors = 0, exp_level = 0;
  exp->add_option("--target", target, "problem to export")
      ->required()
      ->check(CLI::IsMember({"xi-sdp", "theta-plus", "qc-level"}));
  exp->add_option("-c,--colors", exp_colors, "colours for qc-level")->check(CLI::PositiveNumber);
  exp->add_option("-N,--level", exp_level, "level for qc-level")->check(CLI::PositiveNumber);
  exp->add_option("--clique-family", exp_family, "cliques used by xi-sdp")
      ->check(CLI::IsMember({"maximal", "all"}));

  auto* sweep = app.add_subcommand("sweep", "compare xi_sdp and the fractional chromatic number over a list");
  add_common(sweep, cfg, false);
  SweepArgs sa;
  sweep->add_option("--source", sa.source, "graph6 file, one graph per line")->required();
  sweep->add_option("--max-vertices", sa.max_vertices, "skip larger graphs")->check(CLI::PositiveNumber);
  sweep->add_flag("--connected", sa.connected, "skip disconnected graphs");
  sweep->add_option("--diff-tol", sa.tol, "report graphs whose difference exceeds this")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--checkpoint", sa.checkpoint, "checkpoint file (default: under CHROMABOUND_CACHE)");
  sweep->add_option("--clique-family", sa.clique_family, "cliques used by xi_sdp")
      ->check(CLI::IsMember({"maximal", "all"}));

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    // Help and version requests arrive as parse errors with exit code 0.
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*params) return cmd_params(cfg, pa, out);
    if (*qc) return cmd_qc_level(cfg, colors, level, out);
    if (*verify) return cmd_verify(cfg, va, out);
    if (*exp) return cmd_export_sdpa(cfg, target, exp_colors, exp_level, exp_family, out);
    if (*sweep) return cmd_sweep(cfg, sa, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MissingInput& e) {
    err << "error: " << e.what() << '\n';
    return kMissingInput;
  } catch (const LimitExceeded& e) {
    err << "error: limit exceeded: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kUsage;
}

}  // namespace chromabound::cli
