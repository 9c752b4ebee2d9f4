#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace chromabound {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// "5/2", or "3" when the denominator is 1.
std::string to_string(const Rational& r);

// Best rational approximation with denominator <= max_den (continued
// fractions), accepted only if it lies within tol of x.
std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol = 1e-7);

}  // namespace chromabound
