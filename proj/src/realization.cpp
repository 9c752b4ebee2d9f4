#include "chromabound/realization.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "chromabound/errors.hpp"

namespace chromabound {

namespace {

std::string at_vi(int v, int i) { return "v=" + std::to_string(v) + ",i=" + std::to_string(i); }

// Running maximum that remembers where it was attained.
struct Worst {
  double value = 0;
  std::string where;
  void take(double x, const std::string& w) {
    if (x > value || (where.empty() && x >= value)) {
      value = x;
      where = w;
    }
  }
};

void require_shape(const Realization& r) {
  if (r.n < 0 || r.c < 1 || r.dim < 1)
    throw std::invalid_argument("realization: need n >= 0, c >= 1, dim >= 1");
  const std::size_t count = static_cast<std::size_t>(r.n) * r.c;
  if (r.E.size() != count || r.F.size() != count)
    throw std::invalid_argument("realization: expected n*c operators per family");
  if (r.eta.size() != r.dim) throw std::invalid_argument("realization: state has wrong dimension");
  for (const auto* fam : {&r.E, &r.F})
    for (const auto& m : *fam)
      if (m.rows() != r.dim || m.cols() != r.dim)
        throw std::invalid_argument("realization: operator has wrong dimension");
}

void require_shape(const Povm& p) {
  if (p.n < 0 || p.c < 1 || p.dim < 1) throw std::invalid_argument("povm: bad shape");
  if (p.P.size() != static_cast<std::size_t>(p.n) * p.c)
    throw std::invalid_argument("povm: expected n*c operators");
  for (const auto& m : p.P)
    if (m.rows() != p.dim || m.cols() != p.dim)
      throw std::invalid_argument("povm: operator has wrong dimension");
}

// Principal square root of a Hermitian psd matrix; tiny negative
// eigenvalues from rounding are clamped.
CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix block_diagonal(const std::vector<const CMatrix*>& blocks) {
  Eigen::Index total = 0;
  for (const auto* b : blocks) total += b->rows();
  CMatrix out = CMatrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const auto* b : blocks) {
    out.block(at, at, b->rows(), b->cols()) = *b;
    at += b->rows();
  }
  return out;
}

}  // namespace

void CheckReport::add(std::string name, double worst, std::string where, double tol) {
  const bool passed = worst <= tol;
  ok = ok && passed;
  checks.push_back({std::move(name), worst, std::move(where), passed});
}

const Check* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok;
  j["precondition_ok"] = precondition_ok;
  if (!note.empty()) j["note"] = note;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"worst", c.worst}, {"where", c.where}, {"passed", c.passed}});
  return j;
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CheckReport verify_realization(const Realization& r, double tol) {
  require_shape(r);
  CheckReport rep;
  const CMatrix id = CMatrix::Identity(r.dim, r.dim);
  const char* fam_name[2] = {"E", "F"};
  for (int fam = 0; fam < 2; ++fam) {
    const auto& ops = fam == 0 ? r.E : r.F;
    Worst idem, herm, comp;
    for (int v = 0; v < r.n; ++v) {
      CMatrix sum = CMatrix::Zero(r.dim, r.dim);
      for (int i = 0; i < r.c; ++i) {
        const CMatrix& m = ops[static_cast<std::size_t>(v) * r.c + i];
        idem.take(operator_norm(m * m - m), at_vi(v, i));
        herm.take(operator_norm(m - m.adjoint()), at_vi(v, i));
        sum += m;
      }
      comp.take(operator_norm(sum - id), "v=" + std::to_string(v));
    }
    const std::string f = fam_name[fam];
    rep.add(f + " idempotent", idem.value, idem.where, tol);
    rep.add(f + " self-adjoint", herm.value, herm.where, tol);
    rep.add(f + " complete", comp.value, comp.where, tol);
  }
  Worst comm;
  for (int v = 0; v < r.n; ++v)
    for (int i = 0; i < r.c; ++i)
      for (int w = 0; w < r.n; ++w)
        for (int j = 0; j < r.c; ++j) {
          const CMatrix& a = r.e(v, i);
          const CMatrix& b = r.f(w, j);
          comm.take(operator_norm(a * b - b * a), at_vi(v, i) + ";w=" + std::to_string(w) + ",j=" + std::to_string(j));
        }
  rep.add("E and F commute", comm.value, comm.where, tol);
  rep.add("unit state", std::abs(r.eta.norm() - 1.0), "", tol);
  return rep;
}

CheckReport verify_correlation(const Correlation& p, double tol) {
  if (!p.well_shaped()) throw std::invalid_argument("correlation: wrong number of entries");
  CheckReport rep;
  const int n = p.n, c = p.c;
  Worst neg, norm, sig_a, sig_b;
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      double total = 0;
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) {
          neg.take(-p(v, i, w, j), at_vi(v, i) + ";w=" + std::to_string(w) + ",j=" + std::to_string(j));
          total += p(v, i, w, j);
        }
      norm.take(std::abs(total - 1.0), "v=" + std::to_string(v) + ",w=" + std::to_string(w));
    }
  // Alice's marginal must not depend on w, Bob's must not depend on v.
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < c; ++i) {
      double first = 0;
      for (int w = 0; w < n; ++w) {
        double m = 0;
        for (int j = 0; j < c; ++j) m += p(v, i, w, j);
        if (w == 0) first = m;
        sig_a.take(std::abs(m - first), at_vi(v, i) + ";w=" + std::to_string(w));
      }
    }
  for (int w = 0; w < n; ++w)
    for (int j = 0; j < c; ++j) {
      double first = 0;
      for (int v = 0; v < n; ++v) {
        double m = 0;
        for (int i = 0; i < c; ++i) m += p(v, i, w, j);
        if (v == 0) first = m;
        sig_b.take(std::abs(m - first), "w=" + std::to_string(w) + ",j=" + std::to_string(j) + ";v=" + std::to_string(v));
      }
    }
  rep.add("nonnegative", std::max(0.0, neg.value), neg.where, tol);
  rep.add("normalized", norm.value, norm.where, tol);
  rep.add("nonsignaling A", sig_a.value, sig_a.where, tol);
  rep.add("nonsignaling B", sig_b.value, sig_b.where, tol);
  return rep;
}

Correlation correlation_of(const Realization& r) {
  require_shape(r);
  Correlation p(r.n, r.c);
  // Precompute F eta once per (w, j).
  std::vector<CVector> f_eta(r.F.size());
  for (std::size_t k = 0; k < r.F.size(); ++k) f_eta[k] = r.F[k] * r.eta;
  for (int v = 0; v < r.n; ++v)
    for (int i = 0; i < r.c; ++i) {
      // <E F eta, eta> = <F eta, E* eta>
      const CVector e_adj_eta = r.e(v, i).adjoint() * r.eta;
      for (int w = 0; w < r.n; ++w)
        for (int j = 0; j < r.c; ++j) {
          const std::complex<double> z = e_adj_eta.dot(f_eta[static_cast<std::size_t>(w) * r.c + j]);
          if (std::abs(z.imag()) > 1e-9)
            throw std::domain_error("correlation_of: entry " + at_vi(v, i) + ";w=" + std::to_string(w) +
                                    ",j=" + std::to_string(j) + " is not real");
          p(v, i, w, j) = z.real();
        }
    }
  return p;
}

std::vector<double> marginals_a(const Realization& r) {
  require_shape(r);
  std::vector<double> out(r.E.size());
  for (std::size_t k = 0; k < r.E.size(); ++k) out[k] = r.eta.dot(r.E[k] * r.eta).real();
  return out;
}

std::vector<double> marginals_b(const Realization& r) {
  require_shape(r);
  std::vector<double> out(r.F.size());
  for (std::size_t k = 0; k < r.F.size(); ++k) out[k] = r.eta.dot(r.F[k] * r.eta).real();
  return out;
}

double synchronous_residual(const Correlation& p) {
  if (!p.well_shaped()) throw std::invalid_argument("correlation: wrong number of entries");
  double worst = 0;
  for (int v = 0; v < p.n; ++v) {
    double diag = 0;
    for (int i = 0; i < p.c; ++i) diag += p(v, i, v, i);
    worst = std::max(worst, std::abs(1.0 - diag));
  }
  return worst;
}

bool check_synchronous(const Correlation& p, double tol) { return synchronous_residual(p) <= tol; }

double transpose_symmetry_residual(const Correlation& p) {
  if (!p.well_shaped()) throw std::invalid_argument("correlation: wrong number of entries");
  double worst = 0;
  for (int v = 0; v < p.n; ++v)
    for (int i = 0; i < p.c; ++i)
      for (int w = 0; w < p.n; ++w)
        for (int j = 0; j < p.c; ++j) worst = std::max(worst, std::abs(p(v, i, w, j) - p(w, j, v, i)));
  return worst;
}

CheckReport check_hom_conditions(const Correlation& p, const Graph& g, const Graph& h, double tol) {
  if (!p.well_shaped()) throw std::invalid_argument("correlation: wrong number of entries");
  if (p.n != g.num_vertices() || p.c != h.num_vertices())
    throw std::invalid_argument("check_hom_conditions: correlation shape does not match the graphs");
  CheckReport rep;
  Worst sync, adj;
  for (int v = 0; v < p.n; ++v) {
    double mass = 0;
    for (int i = 0; i < p.c; ++i) mass += p(v, i, v, i);
    sync.take(std::abs(1.0 - mass), "v=" + std::to_string(v));
  }
  for (const auto& [v, w] : g.edges())
    for (auto [a, b] : {std::pair{v, w}, std::pair{w, v}}) {
      double mass = 0;
      for (int i = 0; i < p.c; ++i)
        for (int j = 0; j < p.c; ++j)
          if (h.adjacent(i, j)) mass += p(a, i, b, j);
      adj.take(std::abs(1.0 - mass), "v=" + std::to_string(a) + ",w=" + std::to_string(b));
    }
  rep.add("equal inputs give equal outputs", sync.value, sync.where, tol);
  rep.add("adjacent inputs give adjacent outputs", adj.value, adj.where, tol);
  return rep;
}

CheckReport check_tracial_and_reversal(const Realization& r, int max_word_len, int samples, double tol,
                                       std::uint64_t seed) {
  require_shape(r);
  if (max_word_len < 1 || samples < 0)
    throw std::invalid_argument("check_tracial_and_reversal: need max_word_len >= 1 and samples >= 0");
  CheckReport rep;
  const Correlation p = correlation_of(r);
  const double sync = synchronous_residual(p);
  if (sync > tol) {
    rep.ok = false;
    rep.precondition_ok = false;
    rep.note = "correlation is not synchronous (residual " + std::to_string(sync) + "); checks skipped";
    return rep;
  }

  Worst same;
  for (int v = 0; v < r.n; ++v)
    for (int i = 0; i < r.c; ++i) same.take((r.e(v, i) * r.eta - r.f(v, i) * r.eta).norm(), at_vi(v, i));
  rep.add("E eta = F eta", same.value, same.where, tol);

  if (r.n == 0) {
    rep.add("tracial", 0, "", tol);
    rep.add("word reversal", 0, "", tol);
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, max_word_len), vtx(0, r.n - 1), out(0, r.c - 1);
  auto random_word = [&] {
    std::vector<std::pair<int, int>> w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = {vtx(rng), out(rng)};
    return w;
  };
  // Applies the E-word (rightmost letter first) to x.
  auto apply_e = [&](const std::vector<std::pair<int, int>>& w, CVector x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = r.e(it->first, it->second) * x;
    return x;
  };
  auto describe = [](const std::vector<std::pair<int, int>>& w) {
    std::ostringstream s;
    for (std::size_t k = 0; k < w.size(); ++k) s << (k ? " " : "") << "e" << w[k].first << "." << w[k].second;
    return s.str();
  };
  Worst trace, rev;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_word(), y = random_word();
    const std::complex<double> xy = r.eta.dot(apply_e(x, apply_e(y, r.eta)));
    const std::complex<double> yx = r.eta.dot(apply_e(y, apply_e(x, r.eta)));
    trace.take(std::abs(xy - yx), describe(x) + " | " + describe(y));
    // E_{x1} ... E_{xk} eta should equal F_{xk} ... F_{x1} eta.
    CVector fx = r.eta;
    for (const auto& [v, i] : x) fx = r.f(v, i) * fx;
    rev.take((apply_e(x, r.eta) - fx).norm(), describe(x));
  }
  rep.add("tracial", trace.value, trace.where, tol);
  rep.add("word reversal", rev.value, rev.where, tol);
  return rep;
}

CheckReport check_zero_products(const Realization& r, const Graph& g, double tol,
                                const std::vector<int>& outcomes) {
  require_shape(r);
  if (g.num_vertices() != r.n) throw std::invalid_argument("check_zero_products: graph size does not match");
  std::vector<int> which = outcomes;
  if (which.empty())
    for (int i = 0; i < r.c; ++i) which.push_back(i);
  for (int i : which)
    if (i < 0 || i >= r.c) throw std::invalid_argument("check_zero_products: outcome out of range");
  CheckReport rep;
  Worst we, wf;
  for (const auto& [v, w] : g.edges())
    for (int i : which) {
      const std::string where = "v=" + std::to_string(v) + ",w=" + std::to_string(w) + ",i=" + std::to_string(i);
      we.take(operator_norm(r.e(v, i) * r.e(w, i)), where);
      wf.take(operator_norm(r.f(v, i) * r.f(w, i)), where);
    }
  rep.add("E products vanish on edges", we.value, we.where, tol);
  rep.add("F products vanish on edges", wf.value, wf.where, tol);
  if (!rep.ok) {
    rep.note = "nonzero products on edges; they must vanish only for minimal realizations";
    rep.ok = true;
  }
  return rep;
}

Realization minimize(const Realization& r, double rank_tol) {
  require_shape(r);
  const double nrm = r.eta.norm();
  if (nrm <= rank_tol) throw std::invalid_argument("minimize: state is zero");
  std::vector<CVector> basis{r.eta / nrm};
  for (std::size_t k = 0; k < basis.size() && static_cast<int>(basis.size()) < r.dim; ++k) {
    for (const auto& op : r.F) {
      CVector x = op * basis[k];
      // Two passes of Gram-Schmidt keep the basis orthonormal to rounding.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) x -= b.dot(x) * b;
      const double len = x.norm();
      if (len > rank_tol) basis.push_back(x / len);
      if (static_cast<int>(basis.size()) == r.dim) break;
    }
  }
  CMatrix q(r.dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = basis[k];

  Realization out;
  out.n = r.n;
  out.c = r.c;
  out.dim = static_cast<int>(basis.size());
  out.E.reserve(r.E.size());
  out.F.reserve(r.F.size());
  for (const auto& m : r.E) out.E.push_back(q.adjoint() * m * q);
  for (const auto& m : r.F) out.F.push_back(q.adjoint() * m * q);
  out.eta = q.adjoint() * r.eta;
  return out;
}

Realization symmetrize_marginals(const Realization& r) {
  require_shape(r);
  Realization out;
  out.n = r.n;
  out.c = r.c;
  out.dim = r.dim * r.c;
  out.E.resize(r.E.size());
  out.F.resize(r.F.size());
  for (int v = 0; v < r.n; ++v)
    for (int i = 0; i < r.c; ++i) {
      std::vector<const CMatrix*> eb, fb;
      for (int k = 0; k < r.c; ++k) {
        eb.push_back(&r.e(v, (k + i) % r.c));
        fb.push_back(&r.f(v, (k + i) % r.c));
      }
      out.e(v, i) = block_diagonal(eb);
      out.f(v, i) = block_diagonal(fb);
    }
  out.eta = r.eta.replicate(r.c, 1) / std::sqrt(static_cast<double>(r.c));
  return out;
}

double pvm_residual(const Povm& p, int v) {
  require_shape(p);
  if (v < 0 || v >= p.n) throw std::out_of_range("pvm_residual: vertex out of range");
  double worst = 0;
  for (int i = 0; i < p.c; ++i) {
    const CMatrix& m = p.at(v, i);
    worst = std::max({worst, operator_norm(m * m - m), operator_norm(m - m.adjoint())});
  }
  return worst;
}

Dilation dilate_to_pvm(const Povm& p, int v0, double tol) {
  require_shape(p);
  if (v0 < 0 || v0 >= p.n) throw std::out_of_range("dilate_to_pvm: vertex out of range");
  const CMatrix id = CMatrix::Identity(p.dim, p.dim);
  for (int v = 0; v < p.n; ++v) {
    CMatrix sum = CMatrix::Zero(p.dim, p.dim);
    for (int i = 0; i < p.c; ++i) {
      const CMatrix& m = p.at(v, i);
      if (operator_norm(m - m.adjoint()) > tol)
        throw std::invalid_argument("dilate_to_pvm: operator " + at_vi(v, i) + " is not self-adjoint");
      Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("dilate_to_pvm: operator " + at_vi(v, i) + " is not positive");
      sum += m;
    }
    if (operator_norm(sum - id) > tol)
      throw std::invalid_argument("dilate_to_pvm: family v=" + std::to_string(v) + " does not sum to I");
  }

  const int d = p.dim, c = p.c;
  Dilation out;
  out.W = CMatrix::Zero(static_cast<Eigen::Index>(d) * c, d);
  for (int i = 0; i < c; ++i) out.W.block(static_cast<Eigen::Index>(i) * d, 0, d, d) = psd_sqrt(p.at(v0, i));
  const CMatrix ww = out.W * out.W.adjoint();
  const CMatrix complement = CMatrix::Identity(d * c, d * c) - ww;

  out.povm.n = p.n;
  out.povm.c = c;
  out.povm.dim = d * c;
  out.povm.P.resize(p.P.size());
  for (int v = 0; v < p.n; ++v)
    for (int i = 0; i < c; ++i) {
      CMatrix& m = out.povm.at(v, i);
      if (v == v0) {
        m = CMatrix::Zero(d * c, d * c);
        m.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(i) * d, d, d) = CMatrix::Identity(d, d);
      } else {
        m = out.W * p.at(v, i) * out.W.adjoint();
        if (i == 0) m += complement;
      }
    }
  return out;
}

Realization from_projective_representation(const Graph& g, const std::vector<CMatrix>& projs, int rank,
                                           double tol) {
  const int n = g.num_vertices();
  if (static_cast<int>(projs.size()) != n)
    throw std::invalid_argument("from_projective_representation: one projection per vertex required");
  if (n == 0) throw std::invalid_argument("from_projective_representation: empty graph");
  const Eigen::Index d = projs[0].rows();
  if (d < 1) throw std::invalid_argument("from_projective_representation: zero dimension");
  for (int v = 0; v < n; ++v) {
    const CMatrix& m = projs[static_cast<std::size_t>(v)];
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("from_projective_representation: projections differ in size");
    if (operator_norm(m * m - m) > tol || operator_norm(m - m.adjoint()) > tol)
      throw std::invalid_argument("from_projective_representation: vertex " + std::to_string(v) +
                                  " is not an orthogonal projection");
    // For a projection the trace is the rank.
    if (std::abs(m.trace().real() - rank) > 1e-6)
      throw std::invalid_argument("from_projective_representation: vertex " + std::to_string(v) +
                                  " does not have rank " + std::to_string(rank));
  }
  for (const auto& [v, w] : g.edges())
    if (operator_norm(projs[static_cast<std::size_t>(v)] * projs[static_cast<std::size_t>(w)]) > tol)
      throw std::invalid_argument("from_projective_representation: projections on edge " + std::to_string(v) +
                                  "-" + std::to_string(w) + " are not orthogonal");

  const CMatrix id = CMatrix::Identity(d, d);
  Realization r;
  r.n = n;
  r.c = 2;
  r.dim = static_cast<int>(d * d);
  r.E.resize(static_cast<std::size_t>(n) * 2);
  r.F.resize(static_cast<std::size_t>(n) * 2);
  const CMatrix big_id = CMatrix::Identity(d * d, d * d);
  for (int v = 0; v < n; ++v) {
    const CMatrix& m = projs[static_cast<std::size_t>(v)];
    r.e(v, 0) = Eigen::kroneckerProduct(m, id);
    r.f(v, 0) = Eigen::kroneckerProduct(id, CMatrix(m.conjugate()));
    r.e(v, 1) = big_id - r.e(v, 0);
    r.f(v, 1) = big_id - r.f(v, 0);
  }
  r.eta = CVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) r.eta(i * d + i) = 1.0;
  r.eta /= std::sqrt(static_cast<double>(d));
  return r;
}

Realization from_classical_coloring(const Graph& g, const std::vector<int>& coloring, int c) {
  const int n = g.num_vertices();
  if (c < 1) throw std::invalid_argument("from_classical_coloring: need c >= 1");
  if (static_cast<int>(coloring.size()) != n)
    throw std::invalid_argument("from_classical_coloring: one colour per vertex required");
  for (int v = 0; v < n; ++v)
    if (coloring[static_cast<std::size_t>(v)] < 0 || coloring[static_cast<std::size_t>(v)] >= c)
      throw std::invalid_argument("from_classical_coloring: colour out of range at vertex " + std::to_string(v));
  for (const auto& [v, w] : g.edges())
    if (coloring[static_cast<std::size_t>(v)] == coloring[static_cast<std::size_t>(w)])
      throw std::invalid_argument("from_classical_coloring: edge " + std::to_string(v) + "-" + std::to_string(w) +
                                  " is monochromatic");
  Realization r;
  r.n = n;
  r.c = c;
  r.dim = 1;
  r.E.assign(static_cast<std::size_t>(n) * c, CMatrix::Zero(1, 1));
  r.F = r.E;
  for (int v = 0; v < n; ++v) {
    r.e(v, coloring[static_cast<std::size_t>(v)])(0, 0) = 1.0;
    r.f(v, coloring[static_cast<std::size_t>(v)])(0, 0) = 1.0;
  }
  r.eta = CVector::Ones(1);
  return r;
}

Correlation compose_correlations(const Correlation& p2, const Correlation& p1) {
  if (!p1.well_shaped() || !p2.well_shaped())
    throw std::invalid_argument("compose_correlations: malformed correlation");
  if (p2.n != p1.c)
    throw std::invalid_argument("compose_correlations: inputs of the outer correlation must equal the outputs of the inner one");
  Correlation out(p1.n, p2.c);
  for (int v = 0; v < p1.n; ++v)
    for (int w = 0; w < p1.n; ++w)
      for (int i = 0; i < p1.c; ++i)
        for (int j = 0; j < p1.c; ++j) {
          const double q = p1(v, i, w, j);
          if (q == 0) continue;
          for (int a = 0; a < p2.c; ++a)
            for (int b = 0; b < p2.c; ++b) out(v, a, w, b) += p2(i, a, j, b) * q;
        }
  return out;
}

namespace {

nlohmann::json matrix_json(const CMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::complex<double> complex_json(const nlohmann::json& z) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
    throw std::invalid_argument("realization: complex entries must be [re, im]");
  return {z[0].get<double>(), z[1].get<double>()};
}

CMatrix matrix_from_json(const nlohmann::json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw std::invalid_argument("realization: " + what + " must have " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("realization: " + what + " row " + std::to_string(i) + " has wrong length");
    for (int k = 0; k < dim; ++k) m(i, k) = complex_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

std::pair<int, int> parse_key(const std::string& key) {
  const auto comma = key.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t used1 = 0, used2 = 0;
    const int v = std::stoi(key.substr(0, comma), &used1);
    const int i = std::stoi(key.substr(comma + 1), &used2);
    if (used1 != comma || used2 != key.size() - comma - 1 || v < 0 || i < 0) throw std::invalid_argument("");
    return {v, i};
  } catch (const std::exception&) {
    throw std::invalid_argument("realization: operator key '" + key + "' is not of the form \"v,i\"");
  }
}

}  // namespace

nlohmann::json realization_to_json(const Realization& r) {
  require_shape(r);
  nlohmann::json j;
  j["dim"] = r.dim;
  j["n"] = r.n;
  j["c"] = r.c;
  auto eta = nlohmann::json::array();
  for (Eigen::Index k = 0; k < r.eta.size(); ++k) eta.push_back({r.eta(k).real(), r.eta(k).imag()});
  j["eta"] = std::move(eta);
  for (const char* fam : {"E", "F"}) {
    nlohmann::json ops = nlohmann::json::object();
    for (int v = 0; v < r.n; ++v)
      for (int i = 0; i < r.c; ++i)
        ops[std::to_string(v) + "," + std::to_string(i)] = matrix_json(fam[0] == 'E' ? r.e(v, i) : r.f(v, i));
    j[fam] = std::move(ops);
  }
  return j;
}

Realization realization_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("realization: expected a JSON object");
  for (const char* key : {"dim", "eta", "E", "F"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("realization: missing field '") + key + "'");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
    throw std::invalid_argument("realization: dim must be a positive integer");
  Realization r;
  r.dim = j["dim"].get<int>();
  if (!j["E"].is_object() || !j["F"].is_object())
    throw std::invalid_argument("realization: E and F must be objects keyed by \"v,i\"");

  // n and c default to the largest indices present.
  int n = 0, c = 0;
  for (const char* fam : {"E", "F"})
    for (const auto& [key, value] : j[fam].items()) {
      const auto [v, i] = parse_key(key);
      n = std::max(n, v + 1);
      c = std::max(c, i + 1);
    }
  if (j.contains("n")) n = j["n"].get<int>();
  if (j.contains("c")) c = j["c"].get<int>();
  if (c < 1) throw std::invalid_argument("realization: no operators given");
  r.n = n;
  r.c = c;

  const auto& eta = j["eta"];
  if (!eta.is_array() || static_cast<int>(eta.size()) != r.dim)
    throw std::invalid_argument("realization: eta must have dim entries");
  r.eta.resize(r.dim);
  for (int k = 0; k < r.dim; ++k) r.eta(k) = complex_json(eta[static_cast<std::size_t>(k)]);

  for (const char* fam : {"E", "F"}) {
    auto& ops = fam[0] == 'E' ? r.E : r.F;
    ops.assign(static_cast<std::size_t>(n) * c, CMatrix());
    std::vector<bool> seen(ops.size(), false);
    for (const auto& [key, value] : j[fam].items()) {
      const auto [v, i] = parse_key(key);
      if (v >= n || i >= c) throw std::invalid_argument("realization: key " + key + " out of range");
      const std::size_t at = static_cast<std::size_t>(v) * c + i;
      ops[at] = matrix_from_json(value, r.dim, std::string(fam) + "[" + key + "]");
      seen[at] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k])
        throw std::invalid_argument(std::string("realization: ") + fam + " is missing operator " +
                                    std::to_string(k / static_cast<std::size_t>(c)) + "," +
                                    std::to_string(k % static_cast<std::size_t>(c)));
  }
  return r;
}

Realization parse_realization(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("realization: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  return realization_from_json(j);
}

}  // namespace chromabound
