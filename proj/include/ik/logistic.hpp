#pragma once

#include <string>
#include <vector>

namespace ik::logistic {

// Natural log throughout.

double odds_from_prob(double p);  // p / (1 - p), 0 <= p < 1
double prob_from_odds(double o);  // o / (o + 1), o >= 0
double logit(double p);           // ln(p / (1 - p)), 0 < p < 1
double expit(double z);           // 1 / (1 + e^-z), overflow-safe

struct LogisticModel {
  double intercept = 0.0;
  std::vector<double> coefficients;
};

struct Prediction {
  double logit = 0.0;
  double odds = 0.0;
  double probability = 0.0;
};

/// Evaluates b0 + b.x and its odds/probability. Throws ik::DimensionError
/// when x and the coefficients differ in length.
Prediction predict(const LogisticModel& model, const std::vector<double>& x);

/// Value of x[free_slot] that makes the predicted probability equal target_p.
/// The current content of x[free_slot] is ignored.
double solve_feature_for_prob(const LogisticModel& model, const std::vector<double>& x,
                              std::size_t free_slot, double target_p);

enum class ConfidenceLevel { P90, P95, P99, P999 };

/// Fixed two-sided z values 1.645, 1.960, 2.576, 3.291.
double z_value(ConfidenceLevel level);
ConfidenceLevel parse_confidence_level(const std::string& text);  // "90" | "95" | "99" | "99.9"
std::string to_string(ConfidenceLevel level);

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool contains(double v) const noexcept { return low <= v && v <= high; }
};

/// Rows are groups, columns are outcome (yes, no):
///   a b
///   c d
struct TwoByTwoTable {
  double a = 0, b = 0, c = 0, d = 0;

  /// Parses "a,b,c,d".
  static TwoByTwoTable parse(const std::string& text);
};

struct OddsRatio {
  double odds_ratio = 0.0;
  double log_or = 0.0;
  double se = 0.0;  // Woolf: sqrt(1/a + 1/b + 1/c + 1/d)
  Interval ci_log;
  Interval ci_or;
};

OddsRatio odds_ratio(const TwoByTwoTable& t, ConfidenceLevel level);

/// (a / (a + b)) / (c / (c + d)).
double relative_risk(const TwoByTwoTable& t);

struct CoefficientOr {
  double odds_ratio = 0.0;
  Interval ci_beta;
  Interval ci_or;
};

/// Odds ratio and Wald interval for a fitted coefficient with standard error se.
CoefficientOr coefficient_or_ci(double estimate, double se, ConfidenceLevel level);

/// -ln(y_hat) for y = 1, -ln(1 - y_hat) for y = 0.
double binary_cross_entropy(double y_hat, int y);

}  // namespace ik::logistic
