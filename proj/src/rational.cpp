#include "chromabound/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace chromabound {

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol) {
  if (max_den < 1) throw std::invalid_argument("rationalize: max_den must be >= 1");
  if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
  // Convergents h/k of the continued fraction of x; stop before the
  // denominator bound is crossed, then try the best semiconvergent.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  Rational best{0, 1};
  for (int step = 0; step < 64; ++step) {
    const double a_real = std::floor(rest);
    const auto a = static_cast<std::int64_t>(a_real);
    if (k1 != 0 && a > (max_den - k0) / k1) {
      const std::int64_t t = (max_den - k0) / k1;
      Rational semi{t * h1 + h0, t * k1 + k0};
      if (std::abs(semi.value() - x) < std::abs(best.value() - x)) best = semi;
      break;
    }
    const std::int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    best = {h1, k1};
    const double frac = rest - a_real;
    if (frac < 1e-15 || std::abs(best.value() - x) == 0) break;
    rest = 1.0 / frac;
  }
  if (best.den < 0) best = {-best.num, -best.den};
  if (std::abs(best.value() - x) > tol) return std::nullopt;
  return best;
}

}  // namespace chromabound
