#include "ik/logistic.hpp"

#include <cmath>
#include <sstream>

#include "ik/error.hpp"

namespace ik::logistic {
namespace {

[[noreturn]] void domain(const std::string& what, double v) {
  std::ostringstream os;
  os << what << ", got " << v;
  throw DomainError(os.str());
}

Interval ordered(double x, double y) { return x <= y ? Interval{x, y} : Interval{y, x}; }

Interval exp_interval(const Interval& i) { return {std::exp(i.low), std::exp(i.high)}; }

}  // namespace

double odds_from_prob(double p) {
  if (!(p >= 0.0 && p < 1.0)) domain("odds need 0 <= p < 1", p);
  return p / (1.0 - p);
}

double prob_from_odds(double o) {
  if (!(o >= 0.0) || std::isinf(o)) domain("odds must be finite and >= 0", o);
  return o / (o + 1.0);
}

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) domain("logit needs 0 < p < 1", p);
  return std::log(p / (1.0 - p));
}

double expit(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Prediction predict(const LogisticModel& model, const std::vector<double>& x) {
  if (x.size() != model.coefficients.size()) {
    throw DimensionError("model has " + std::to_string(model.coefficients.size()) +
                         " coefficients but x has " + std::to_string(x.size()) + " features");
  }
  double z = model.intercept;
  for (std::size_t i = 0; i < x.size(); ++i) z += model.coefficients[i] * x[i];
  return {z, std::exp(z), expit(z)};
}

double solve_feature_for_prob(const LogisticModel& model, const std::vector<double>& x,
                              std::size_t free_slot, double target_p) {
  if (x.size() != model.coefficients.size())
    throw DimensionError("feature vector length does not match the model");
  if (free_slot >= x.size()) throw InvalidArgument("free slot index out of range");
  const double beta = model.coefficients[free_slot];
  if (beta == 0.0) throw DomainError("coefficient of the free feature is 0; target unreachable");
  double rest = model.intercept;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != free_slot) rest += model.coefficients[i] * x[i];
  return (logit(target_p) - rest) / beta;
}

double z_value(ConfidenceLevel level) {
  switch (level) {
    case ConfidenceLevel::P90: return 1.645;
    case ConfidenceLevel::P95: return 1.960;
    case ConfidenceLevel::P99: return 2.576;
    case ConfidenceLevel::P999: return 3.291;
  }
  return 1.960;
}

ConfidenceLevel parse_confidence_level(const std::string& text) {
  if (text == "90") return ConfidenceLevel::P90;
  if (text == "95") return ConfidenceLevel::P95;
  if (text == "99") return ConfidenceLevel::P99;
  if (text == "99.9") return ConfidenceLevel::P999;
  throw InvalidArgument("confidence level must be one of 90, 95, 99, 99.9 (got '" + text + "')");
}

std::string to_string(ConfidenceLevel level) {
  switch (level) {
    case ConfidenceLevel::P90: return "90";
    case ConfidenceLevel::P95: return "95";
    case ConfidenceLevel::P99: return "99";
    case ConfidenceLevel::P999: return "99.9";
  }
  return "?";
}

TwoByTwoTable TwoByTwoTable::parse(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw InvalidArgument("table cell '" + cell + "' is not a number");
    v.push_back(x);
  }
  if (v.size() != 4) throw InvalidArgument("table needs exactly four counts a,b,c,d");
  for (double x : v)
    if (!(x >= 0.0)) throw DomainError("table counts must be >= 0");
  return {v[0], v[1], v[2], v[3]};
}

OddsRatio odds_ratio(const TwoByTwoTable& t, ConfidenceLevel level) {
  if (!(t.a > 0 && t.b > 0 && t.c > 0 && t.d > 0))
    throw DomainError("odds ratio with Woolf SE needs all four cells > 0");
  OddsRatio r;
  r.odds_ratio = (t.a * t.d) / (t.b * t.c);
  r.log_or = std::log(r.odds_ratio);
  r.se = std::sqrt(1.0 / t.a + 1.0 / t.b + 1.0 / t.c + 1.0 / t.d);
  const double half = z_value(level) * r.se;
  r.ci_log = ordered(r.log_or - half, r.log_or + half);
  r.ci_or = exp_interval(r.ci_log);
  return r;
}

double relative_risk(const TwoByTwoTable& t) {
  if (!(t.a + t.b > 0) || !(t.c + t.d > 0)) throw DomainError("relative risk needs nonempty rows");
  const double denom = t.c / (t.c + t.d);
  if (denom == 0.0) throw DomainError("relative risk undefined: second row has zero risk");
  return (t.a / (t.a + t.b)) / denom;
}

CoefficientOr coefficient_or_ci(double estimate, double se, ConfidenceLevel level) {
  if (!(se > 0.0)) domain("standard error must be > 0", se);
  CoefficientOr r;
  r.odds_ratio = std::exp(estimate);
  const double half = z_value(level) * se;
  r.ci_beta = ordered(estimate - half, estimate + half);
  r.ci_or = exp_interval(r.ci_beta);
  return r;
}

double binary_cross_entropy(double y_hat, int y) {
  if (!(y_hat > 0.0 && y_hat < 1.0)) domain("cross entropy needs 0 < y_hat < 1", y_hat);
  if (y != 0 && y != 1) throw InvalidArgument("label must be 0 or 1");
  return y == 1 ? -std::log(y_hat) : -std::log1p(-y_hat);
}

}  // namespace ik::logistic
