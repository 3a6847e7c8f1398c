#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ik {

enum class LogBase { Bits, Nats, Hartleys };

/// log(x) in the requested base.
double log_in(LogBase base, double x);

LogBase parse_log_base(const std::string& name);  // "bits" | "nats" | "hartleys"
std::string to_string(LogBase base);

/// Finite probability vector with optional labels.
///
/// Construction validates p_i >= 0 and sum p_i = 1 within 1e-9; the stored
/// probabilities are kept exactly as given (no renormalisation).
class DiscreteDist {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit DiscreteDist(std::vector<double> probs, std::vector<std::string> labels = {});

  static DiscreteDist uniform(std::size_t n);
  // Empirical frequencies; counts need not be integers but must be >= 0 with a positive total.
  static DiscreteDist from_counts(std::span<const double> counts);
  // Scales nonnegative weights to sum 1.
  static DiscreteDist normalized(std::vector<double> weights, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

}  // namespace ik
