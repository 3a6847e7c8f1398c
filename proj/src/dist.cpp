#include "ik/dist.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ik/error.hpp"

namespace ik {

double log_in(LogBase base, double x) {
  switch (base) {
    case LogBase::Bits: return std::log2(x);
    case LogBase::Nats: return std::log(x);
    case LogBase::Hartleys: return std::log10(x);
  }
  return std::log(x);
}

LogBase parse_log_base(const std::string& name) {
  if (name == "bits" || name == "2") return LogBase::Bits;
  if (name == "nats" || name == "e") return LogBase::Nats;
  if (name == "hartleys" || name == "10") return LogBase::Hartleys;
  throw InvalidArgument("unknown log base '" + name + "' (bits, nats, hartleys)");
}

std::string to_string(LogBase base) {
  switch (base) {
    case LogBase::Bits: return "bits";
    case LogBase::Nats: return "nats";
    case LogBase::Hartleys: return "hartleys";
  }
  return "?";
}

DiscreteDist::DiscreteDist(std::vector<double> probs, std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  if (probs_.empty()) throw InvalidArgument("distribution must have at least one outcome");
  if (!labels_.empty() && labels_.size() != probs_.size())
    throw DimensionError("label count does not match probability count");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      std::ostringstream os;
      os << "probability " << i << " is " << p << ", must be finite and >= 0";
      throw DomainError(os.str());
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total << ", expected 1";
    throw DomainError(os.str());
  }
}

DiscreteDist DiscreteDist::uniform(std::size_t n) {
  if (n == 0) throw InvalidArgument("uniform distribution needs n >= 1");
  return DiscreteDist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDist DiscreteDist::from_counts(std::span<const double> counts) {
  return normalized(std::vector<double>(counts.begin(), counts.end()));
}

DiscreteDist DiscreteDist::normalized(std::vector<double> weights, std::vector<std::string> labels) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("weights sum to zero");
  for (double& w : weights) w /= total;
  return DiscreteDist(std::move(weights), std::move(labels));
}

}  // namespace ik
