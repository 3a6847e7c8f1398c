#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ik/exprgraph/expr.hpp"

namespace ik::expr {

enum class FdScheme { Forward, Central };

/// Finite-difference derivative of `expr` in `wrt`.
/// Forward: (f(x+h) - f(x)) / h. Central: (f(x+h) - f(x-h)) / (2h).
double finite_diff(const Expr& expr, const Bindings& at, std::string_view wrt, double h,
                   FdScheme scheme);

/// Central difference with the default step h = 1e-6 * max(1, |x|).
double finite_diff(const Expr& expr, const Bindings& at, std::string_view wrt);

double default_step(double x);

enum class Series { Exp, Sin, Cos, Geometric, LnAbout1 };

/// Partial sum of the first `terms` nonzero terms of a Maclaurin/Taylor series.
///   exp:        sum x^k / k!
///   sin:        sum (-1)^k x^(2k+1) / (2k+1)!
///   cos:        sum (-1)^k x^(2k) / (2k)!
///   geometric:  sum x^k, |x| < 1
///   ln_about_1: sum (-1)^(k+1) (x-1)^k / k, |x-1| <= 1, x != 0
double taylor_eval(Series series, double x, int terms);

/// "exp" | "sin" | "cos" | "geometric" | "ln1p".
Series parse_series(std::string_view name);

struct GdConfig {
  double learning_rate = 0.1;
  int max_iterations = 1000;
  double tolerance = 1e-6;  // on the max-norm of the gradient
  double momentum = 0.0;    // in [0, 1)

  void validate() const;
};

enum class GdStatus {
  Converged,     // gradient max-norm <= tolerance
  Oscillating,   // the iterate state repeated exactly: a cycle that cannot converge
  MaxIterations  // budget exhausted
};

struct GdResult {
  Bindings point;
  double value = 0.0;
  int iterations = 0;
  GdStatus status = GdStatus::MaxIterations;
  std::vector<std::vector<double>> trajectory;  // one entry per visited point, in `vars` order

  bool converged() const { return status == GdStatus::Converged; }
};

/// Gradient descent with heavy-ball momentum:
///   v_k = m v_{k-1} + grad f(x_{k-1}),  x_k = x_{k-1} - eta v_k,  v_0 = 0.
/// Each gradient component is one forward-mode pass. Throws ik::DomainError
/// naming the iteration if a value or gradient becomes non-finite.
std::string to_string(GdStatus s);

GdResult gradient_descent(const Expr& expr, const std::vector<std::string>& vars,
                          const Bindings& init, const GdConfig& cfg);

}  // namespace ik::expr
