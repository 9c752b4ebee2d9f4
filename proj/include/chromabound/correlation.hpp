#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chromabound {

// p(i,j|v,w): probability of outcomes (i,j) on inputs (v,w). Stored flat with
// index ((v*c + i)*n + w)*c + j, so the array reads as an (nc) x (nc) matrix
// with row (v,i) and column (w,j).
struct Correlation {
  int n = 0;
  int c = 0;
  std::vector<double> p;

  Correlation() = default;
  Correlation(int n_, int c_) : n(n_), c(c_), p(static_cast<std::size_t>(n_) * c_ * n_ * c_, 0.0) {
    if (n_ < 0 || c_ < 1) throw std::invalid_argument("correlation: need n >= 0 and c >= 1");
  }

  std::size_t index(int v, int i, int w, int j) const {
    return ((static_cast<std::size_t>(v) * c + i) * n + w) * c + j;
  }
  double& operator()(int v, int i, int w, int j) { return p[index(v, i, w, j)]; }
  double operator()(int v, int i, int w, int j) const { return p[index(v, i, w, j)]; }

  bool well_shaped() const {
    return n >= 0 && c >= 1 && p.size() == static_cast<std::size_t>(n) * c * n * c;
  }
};

}  // namespace chromabound
