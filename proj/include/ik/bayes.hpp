#pragma once

#include <vector>

#include "ik/dist.hpp"

namespace ik::bayes {

/// Boltzmann constant in J/K, as tabulated (4 significant digits).
inline constexpr double kBoltzmann = 1.381e-23;

struct BinomialParams {
  int n = 0;
  double p = 0.0;
};

/// C(n,k) p^k (1-p)^(n-k), evaluated in log space.
double binomial_pmf(const BinomialParams& params, int k);
double binomial_log_pmf(const BinomialParams& params, int k);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments binomial_moments(const BinomialParams& params);

/// P(X >= k_min), accumulated with log-sum-exp.
double binomial_tail(const BinomialParams& params, int k_min);

double z_score(double x, double mu, double sigma);

struct TwoHypothesis {
  double prior = 0.0;         // P(A)
  double lik_given_a = 0.0;   // P(B | A)
  double lik_given_not = 0.0; // P(B | not A)
};

struct PosteriorResult {
  double posterior = 0.0;  // P(A | B)
  double evidence = 0.0;   // P(B)
};

PosteriorResult posterior_two_hypothesis(const TwoHypothesis& h);

struct MleResult {
  double gamma_hat = 0.0;
  double variance = 0.0;  // gamma_hat (1 - gamma_hat) / n
  double se = 0.0;
};

MleResult mle_binomial(int successes, int trials);

double fisher_bernoulli(double gamma);
double fisher_poisson(double theta);
double fisher_binomial(int n, double gamma);

struct BetaParams {
  double a = 1.0;
  double b = 1.0;
};

double beta_pdf(const BetaParams& params, double theta);

/// Conjugate update: Beta(a + s, b + n - s).
BetaParams beta_binomial_update(const BetaParams& prior, int successes, int trials);

/// beta_pdf(prior, theta) * binomial_pmf((n, theta), x).
double unnormalized_posterior_density(const BetaParams& prior, int n, int x, double theta);

struct DiscreteThetaPrior {
  std::vector<double> thetas;
  DiscreteDist weights;

  DiscreteThetaPrior(std::vector<double> thetas, DiscreteDist weights);
};

/// Posterior weights over the same theta support after y successes in n trials.
DiscreteDist discrete_posterior(const DiscreteThetaPrior& prior, int n, int y);

/// Marginal distribution of y in {0..n}.
DiscreteDist prior_predictive(const DiscreteThetaPrior& prior, int n);

/// Unit-rate exponential: below = P(X < t), at_or_above = P(X >= t).
struct ExpTail {
  double below = 0.0;
  double at_or_above = 0.0;
};

ExpTail exp_tail(double threshold);

/// Mode sqrt(2 kB T / m) of the Maxwell-Boltzmann speed density.
double mb_most_probable_speed(double k_b, double temperature, double mass);

}  // namespace ik::bayes
