#include "ik/exprgraph/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "ik/error.hpp"

namespace ik::expr {

double default_step(double x) { return 1e-6 * std::max(1.0, std::fabs(x)); }

double finite_diff(const Expr& expr, const Bindings& at, std::string_view wrt, double h,
                   FdScheme scheme) {
  if (!(h > 0.0)) throw InvalidArgument("finite difference step must be positive");
  auto it = at.find(wrt);
  if (it == at.end())
    throw InvalidArgument("differentiation variable '" + std::string(wrt) + "' is not bound");

  Bindings shifted = at;
  auto& slot = shifted.find(wrt)->second;
  const double x = it->second;

  slot = x + h;
  const double f_plus = eval(expr, shifted);
  if (scheme == FdScheme::Forward) {
    const double f0 = eval(expr, at);
    return (f_plus - f0) / h;
  }
  slot = x - h;
  const double f_minus = eval(expr, shifted);
  return (f_plus - f_minus) / (2.0 * h);
}

double finite_diff(const Expr& expr, const Bindings& at, std::string_view wrt) {
  auto it = at.find(wrt);
  if (it == at.end())
    throw InvalidArgument("differentiation variable '" + std::string(wrt) + "' is not bound");
  return finite_diff(expr, at, wrt, default_step(it->second), FdScheme::Central);
}

double taylor_eval(Series series, double x, int terms) {
  if (terms <= 0) throw InvalidArgument("taylor_eval needs a positive term count");
  double sum = 0.0;
  switch (series) {
    case Series::Exp: {
      double term = 1.0;
      for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= x / (k + 1);
      }
      return sum;
    }
    case Series::Sin: {
      double term = x;
      for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= -x * x / ((2.0 * k + 2) * (2.0 * k + 3));
      }
      return sum;
    }
    case Series::Cos: {
      double term = 1.0;
      for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= -x * x / ((2.0 * k + 1) * (2.0 * k + 2));
      }
      return sum;
    }
    case Series::Geometric: {
      if (!(std::fabs(x) < 1.0)) throw DomainError("geometric series needs |x| < 1");
      double term = 1.0;
      for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= x;
      }
      return sum;
    }
    case Series::LnAbout1: {
      if (!(x > 0.0 && x <= 2.0)) throw DomainError("ln series about 1 needs 0 < x <= 2");
      const double u = x - 1.0;
      double power = u;
      for (int k = 1; k <= terms; ++k) {
        sum += (k % 2 == 1 ? power : -power) / k;
        power *= u;
      }
      return sum;
    }
  }
  return sum;
}

void GdConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be > 0");
  if (max_iterations <= 0) throw InvalidArgument("max iterations must be positive");
  if (!(tolerance > 0.0)) throw InvalidArgument("gradient tolerance must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InvalidArgument("momentum must lie in [0, 1)");
}

namespace {

[[noreturn]] void non_finite(int iteration, const char* what) {
  std::ostringstream os;
  os << "gradient descent: non-finite " << what << " at iteration " << iteration;
  throw DomainError(os.str());
}

}  // namespace

GdResult gradient_descent(const Expr& expr, const std::vector<std::string>& vars,
                          const Bindings& init, const GdConfig& cfg) {
  cfg.validate();
  if (vars.empty()) throw InvalidArgument("gradient descent needs at least one variable");
  for (const auto& v : vars)
    if (init.find(v) == init.end()) throw InvalidArgument("no initial value for '" + v + "'");

  const std::size_t n = vars.size();
  Bindings point = init;
  std::vector<double> velocity(n, 0.0);

  auto coords = [&] {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = point.at(vars[i]);
    return c;
  };

  GdResult result;
  result.trajectory.push_back(coords());

  // Full iterate state (position + velocity) two steps back; an exact repeat
  // means the deterministic map is on a cycle.
  std::vector<std::vector<double>> history;

  for (int iter = 0;; ++iter) {
    std::vector<double> grad(n);
    double value = 0.0;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const AdResult ad = forward_ad(expr, point, vars[i]);
      value = ad.value;
      grad[i] = ad.derivative;
      if (!std::isfinite(ad.value)) non_finite(iter, "value");
      if (!std::isfinite(ad.derivative)) non_finite(iter, "gradient");
      max_abs = std::max(max_abs, std::fabs(ad.derivative));
    }
    result.value = value;
    result.iterations = iter;
    if (max_abs <= cfg.tolerance) {
      result.status = GdStatus::Converged;
      break;
    }
    if (iter >= cfg.max_iterations) {
      result.status = GdStatus::MaxIterations;
      break;
    }

    std::vector<double> state = coords();
    state.insert(state.end(), velocity.begin(), velocity.end());
    if (history.size() >= 2 && history[history.size() - 2] == state) {
      result.status = GdStatus::Oscillating;
      break;
    }
    history.push_back(std::move(state));
    if (history.size() > 2) history.erase(history.begin());

    for (std::size_t i = 0; i < n; ++i) {
      velocity[i] = cfg.momentum * velocity[i] + grad[i];
      point[vars[i]] -= cfg.learning_rate * velocity[i];
    }
    result.trajectory.push_back(coords());
  }
  result.point = point;
  return result;
}

Series parse_series(std::string_view name) {
  if (name == "exp") return Series::Exp;
  if (name == "sin") return Series::Sin;
  if (name == "cos") return Series::Cos;
  if (name == "geometric") return Series::Geometric;
  if (name == "ln1p" || name == "ln") return Series::LnAbout1;
  throw InvalidArgument("unknown series '" + std::string(name) + "'");
}

std::string to_string(GdStatus s) {
  switch (s) {
    case GdStatus::Converged: return "converged";
    case GdStatus::Oscillating: return "oscillating";
    case GdStatus::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

}  // namespace ik::expr
