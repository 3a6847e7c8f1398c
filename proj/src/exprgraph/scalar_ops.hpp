#pragma once

// Domain-checked scalar kernels shared by plain and dual evaluation.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ik/error.hpp"

namespace ik::expr::detail {

[[noreturn]] inline void domain_fail(const char* op, double value, const char* requirement) {
  std::ostringstream os;
  os.precision(17);
  os << op << ": argument " << value << " outside domain (" << requirement << ")";
  throw DomainError(os.str());
}

inline void require_positive(const char* op, double x) {
  if (!(x > 0.0)) domain_fail(op, x, "must be > 0");
}

inline void require_open_unit(const char* op, double x) {
  if (!(x > -1.0 && x < 1.0)) domain_fail(op, x, "must lie in (-1, 1)");
}

inline void require_nonzero_divisor(double x) {
  if (x == 0.0) domain_fail("div", x, "divisor must be nonzero");
}

inline bool is_integer_valued(double x) {
  return std::isfinite(x) && std::trunc(x) == x &&
         std::fabs(x) <= static_cast<double>(std::numeric_limits<long long>::max() / 2);
}

// Binary exponentiation; negative n goes through a reciprocal.
inline double int_pow(double base, long long n) {
  if (n < 0) {
    if (base == 0.0) domain_fail("pow", base, "zero base with negative integer exponent");
    return 1.0 / int_pow(base, -n);
  }
  double result = 1.0;
  double factor = base;
  auto k = static_cast<unsigned long long>(n);
  while (k != 0) {
    if (k & 1ULL) result *= factor;
    factor *= factor;
    k >>= 1;
  }
  return result;
}

inline double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double checked_pow(double base, double exponent) {
  if (is_integer_valued(exponent)) return int_pow(base, static_cast<long long>(exponent));
  if (!(base > 0.0)) domain_fail("pow", base, "non-integer exponent needs a positive base");
  return std::pow(base, exponent);
}

inline double checked_ln(double x) {
  require_positive("ln", x);
  return std::log(x);
}

inline double checked_sqrt(double x) {
  require_positive("sqrt", x);
  return std::sqrt(x);
}

inline double checked_atanh(double x) {
  require_open_unit("atanh", x);
  return std::atanh(x);
}

inline double checked_div(double a, double b) {
  require_nonzero_divisor(b);
  return a / b;
}

}  // namespace ik::expr::detail
