#pragma once

#include <iosfwd>

namespace ik::expr {

/// First-order dual number `value + tangent*d` with d^2 = 0.
///
/// Arithmetic on duals carries exact first derivatives along with values:
/// g(x + x'd) = g(x) + g'(x) x' d. Every elementary function below enforces
/// the same domain rules as plain evaluation and throws ik::DomainError on
/// violation rather than producing an infinity or NaN.
struct Dual {
  double value = 0.0;
  double tangent = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v, double t = 0.0) : value(v), tangent(t) {}

  static constexpr Dual constant(double v) { return {v, 0.0}; }
  static constexpr Dual variable(double v) { return {v, 1.0}; }

  friend constexpr bool operator==(const Dual&, const Dual&) = default;
};

Dual operator-(Dual a);
Dual operator+(Dual a, Dual b);
Dual operator-(Dual a, Dual b);
Dual operator*(Dual a, Dual b);
Dual operator/(Dual a, Dual b);

Dual ln(Dual a);
Dual exp(Dual a);
Dual sin(Dual a);
Dual cos(Dual a);
Dual sqrt(Dual a);
Dual tanh(Dual a);
Dual atanh(Dual a);
Dual sigmoid(Dual a);

// Integer exponents are evaluated by repeated multiplication, so a negative
// base is legal there. Non-integer exponents need a positive base.
Dual pow(Dual base, Dual exponent);

std::ostream& operator<<(std::ostream& os, const Dual& d);

}  // namespace ik::expr
