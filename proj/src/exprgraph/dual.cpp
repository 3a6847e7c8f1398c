#include "ik/exprgraph/dual.hpp"

#include <cmath>
#include <ostream>

#include "scalar_ops.hpp"

namespace ik::expr {

using namespace detail;

Dual operator-(Dual a) { return {-a.value, -a.tangent}; }

Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.tangent + b.tangent}; }

Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.tangent - b.tangent}; }

Dual operator*(Dual a, Dual b) {
  return {a.value * b.value, a.value * b.tangent + a.tangent * b.value};
}

Dual operator/(Dual a, Dual b) {
  require_nonzero_divisor(b.value);
  const double q = a.value / b.value;
  return {q, (a.tangent - q * b.tangent) / b.value};
}

Dual ln(Dual a) {
  const double v = checked_ln(a.value);
  return {v, a.tangent / a.value};
}

Dual exp(Dual a) {
  const double v = std::exp(a.value);
  return {v, v * a.tangent};
}

Dual sin(Dual a) { return {std::sin(a.value), std::cos(a.value) * a.tangent}; }

Dual cos(Dual a) { return {std::cos(a.value), -std::sin(a.value) * a.tangent}; }

Dual sqrt(Dual a) {
  const double v = checked_sqrt(a.value);
  return {v, a.tangent / (2.0 * v)};
}

Dual tanh(Dual a) {
  const double v = std::tanh(a.value);
  return {v, (1.0 - v * v) * a.tangent};
}

Dual atanh(Dual a) {
  const double v = checked_atanh(a.value);
  return {v, a.tangent / (1.0 - a.value * a.value)};
}

Dual sigmoid(Dual a) {
  const double s = stable_sigmoid(a.value);
  return {s, s * (1.0 - s) * a.tangent};
}

Dual pow(Dual base, Dual exponent) {
  const double a = base.value;
  const double b = exponent.value;
  const double v = checked_pow(a, b);

  double tangent = 0.0;
  if (base.tangent != 0.0) {
    if (is_integer_valued(b)) {
      const auto n = static_cast<long long>(b);
      if (n != 0) tangent += static_cast<double>(n) * int_pow(a, n - 1) * base.tangent;
    } else {
      tangent += b * std::pow(a, b - 1.0) * base.tangent;
    }
  }
  if (exponent.tangent != 0.0) {
    // d/db a^b = a^b ln a, only defined for a > 0.
    if (!(a > 0.0)) domain_fail("pow", a, "variable exponent needs a positive base");
    tangent += v * std::log(a) * exponent.tangent;
  }
  return {v, tangent};
}

std::ostream& operator<<(std::ostream& os, const Dual& d) {
  return os << d.value << " + " << d.tangent << "d";
}

}  // namespace ik::expr
