#include "ik/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ik/error.hpp"

namespace ik::bayes {
namespace {

[[noreturn]] void domain(const std::string& what, double v) {
  std::ostringstream os;
  os << what << ", got " << v;
  throw DomainError(os.str());
}

void validate(const BinomialParams& params) {
  if (params.n < 0) throw InvalidArgument("binomial n must be >= 0");
  if (!(params.p >= 0.0 && params.p <= 1.0)) domain("binomial p must lie in [0, 1]", params.p);
}

void check_count(int k, int n, const char* what) {
  if (k < 0 || k > n) {
    throw InvalidArgument(std::string(what) + " " + std::to_string(k) + " outside [0, " +
                          std::to_string(n) + "]");
  }
}

void validate(const BetaParams& params) {
  if (!(params.a > 0.0)) domain("beta parameter a must be > 0", params.a);
  if (!(params.b > 0.0)) domain("beta parameter b must be > 0", params.b);
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// k * log(p) with the 0 * log 0 = 0 convention.
double xlogy(double k, double p) { return k == 0.0 ? 0.0 : k * std::log(p); }

}  // namespace

double binomial_log_pmf(const BinomialParams& params, int k) {
  validate(params);
  check_count(k, params.n, "k");
  const double ninf = -std::numeric_limits<double>::infinity();
  if (params.p == 0.0) return k == 0 ? 0.0 : ninf;
  if (params.p == 1.0) return k == params.n ? 0.0 : ninf;
  return log_choose(params.n, k) + xlogy(k, params.p) + (params.n - k) * std::log1p(-params.p);
}

double binomial_pmf(const BinomialParams& params, int k) { return std::exp(binomial_log_pmf(params, k)); }

Moments binomial_moments(const BinomialParams& params) {
  validate(params);
  const double n = params.n;
  return {n * params.p, n * params.p * (1.0 - params.p)};
}

double binomial_tail(const BinomialParams& params, int k_min) {
  validate(params);
  check_count(k_min, params.n, "k_min");
  if (k_min == 0) return 1.0;
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(params.n - k_min + 1));
  for (int k = k_min; k <= params.n; ++k) logs.push_back(binomial_log_pmf(params, k));
  const double top = *std::max_element(logs.begin(), logs.end());
  if (std::isinf(top)) return 0.0;
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return std::min(1.0, std::exp(top + std::log(sum)));
}

double z_score(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) domain("z-score needs sigma > 0", sigma);
  return (x - mu) / sigma;
}

PosteriorResult posterior_two_hypothesis(const TwoHypothesis& h) {
  for (double v : {h.prior, h.lik_given_a, h.lik_given_not})
    if (!(v >= 0.0 && v <= 1.0)) domain("probabilities must lie in [0, 1]", v);
  const double joint_a = h.lik_given_a * h.prior;
  const double evidence = joint_a + h.lik_given_not * (1.0 - h.prior);
  if (!(evidence > 0.0)) throw DomainError("evidence has probability 0; posterior undefined");
  return {joint_a / evidence, evidence};
}

MleResult mle_binomial(int successes, int trials) {
  if (trials <= 0) throw InvalidArgument("MLE needs trials > 0");
  check_count(successes, trials, "successes");
  MleResult r;
  r.gamma_hat = static_cast<double>(successes) / trials;
  r.variance = r.gamma_hat * (1.0 - r.gamma_hat) / trials;
  r.se = std::sqrt(r.variance);
  return r;
}

double fisher_bernoulli(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) domain("Fisher information needs 0 < gamma < 1", gamma);
  return 1.0 / (gamma * (1.0 - gamma));
}

double fisher_poisson(double theta) {
  if (!(theta > 0.0)) domain("Fisher information needs theta > 0", theta);
  return 1.0 / theta;
}

double fisher_binomial(int n, double gamma) {
  if (n <= 0) throw InvalidArgument("Fisher information needs n > 0");
  return n * fisher_bernoulli(gamma);
}

double beta_pdf(const BetaParams& params, double theta) {
  validate(params);
  if (!(theta >= 0.0 && theta <= 1.0)) domain("beta density needs theta in [0, 1]", theta);
  const bool endpoint = theta == 0.0 || theta == 1.0;
  if (endpoint && (params.a < 1.0 || params.b < 1.0))
    domain("beta density is unbounded at the endpoint for a < 1 or b < 1; theta", theta);
  const double log_norm =
      std::lgamma(params.a + params.b) - std::lgamma(params.a) - std::lgamma(params.b);
  const double log_kernel = xlogy(params.a - 1.0, theta) + xlogy(params.b - 1.0, 1.0 - theta);
  return std::exp(log_norm + log_kernel);
}

BetaParams beta_binomial_update(const BetaParams& prior, int successes, int trials) {
  validate(prior);
  if (trials < 0) throw InvalidArgument("trials must be >= 0");
  check_count(successes, trials, "successes");
  return {prior.a + successes, prior.b + (trials - successes)};
}

double unnormalized_posterior_density(const BetaParams& prior, int n, int x, double theta) {
  return beta_pdf(prior, theta) * binomial_pmf({n, theta}, x);
}

DiscreteThetaPrior::DiscreteThetaPrior(std::vector<double> thetas_in, DiscreteDist weights_in)
    : thetas(std::move(thetas_in)), weights(std::move(weights_in)) {
  if (thetas.size() != weights.size()) throw DimensionError("theta support and weights differ in length");
  for (double t : thetas)
    if (!(t >= 0.0 && t <= 1.0)) domain("theta must lie in [0, 1]", t);
}

DiscreteDist discrete_posterior(const DiscreteThetaPrior& prior, int n, int y) {
  std::vector<double> w(prior.thetas.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    w[j] = prior.weights[j] == 0.0 ? 0.0 : prior.weights[j] * binomial_pmf({n, prior.thetas[j]}, y);
  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0)) throw DomainError("data has zero probability under every prior theta");
  return DiscreteDist::normalized(std::move(w), prior.weights.labels());
}

DiscreteDist prior_predictive(const DiscreteThetaPrior& prior, int n) {
  if (n < 0) throw InvalidArgument("n must be >= 0");
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t j = 0; j < prior.thetas.size(); ++j) {
    if (prior.weights[j] == 0.0) continue;
    for (int y = 0; y <= n; ++y) p[y] += prior.weights[j] * binomial_pmf({n, prior.thetas[j]}, y);
  }
  return DiscreteDist::normalized(std::move(p));
}

ExpTail exp_tail(double threshold) {
  if (!(threshold >= 0.0)) domain("threshold must be >= 0", threshold);
  return {-std::expm1(-threshold), std::exp(-threshold)};
}

double mb_most_probable_speed(double k_b, double temperature, double mass) {
  if (!(k_b > 0.0)) domain("kB must be > 0", k_b);
  if (!(temperature > 0.0)) domain("temperature must be > 0", temperature);
  if (!(mass > 0.0)) domain("mass must be > 0", mass);
  return std::sqrt(2.0 * k_b * temperature / mass);
}

}  // namespace ik::bayes
