#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ik/bayes.hpp"
#include "ik/error.hpp"

using namespace ik::bayes;

namespace {

DiscreteThetaPrior sol_prior() {
  return {{0.5, 1.0 / 6.0, 0.25}, ik::DiscreteDist({0.25, 0.5, 0.25})};
}

}  // namespace

// ---------------------------------------------------------------- binomial

TEST(Binomial, PmfValues) {
  EXPECT_NEAR(binomial_pmf({200, 0.1}, 60), 2.764108735e-15, 1e-23);
  EXPECT_NEAR(binomial_pmf({100, 0.5}, 50), 0.0795892373871788, 1e-13);
  EXPECT_DOUBLE_EQ(binomial_pmf({1, 0.3}, 1), 0.3);
  EXPECT_EQ(binomial_pmf({5, 0.0}, 0), 1.0);
  EXPECT_EQ(binomial_pmf({5, 0.0}, 2), 0.0);
  EXPECT_EQ(binomial_pmf({5, 1.0}, 5), 1.0);
}

TEST(Binomial, Errors) {
  EXPECT_THROW(binomial_pmf({5, 0.5}, 6), ik::InvalidArgument);
  EXPECT_THROW(binomial_pmf({5, 0.5}, -1), ik::InvalidArgument);
  EXPECT_THROW(binomial_pmf({5, 1.5}, 1), ik::DomainError);
  EXPECT_THROW(binomial_tail({5, 0.5}, 7), ik::InvalidArgument);
}

TEST(Binomial, Moments) {
  const auto m = binomial_moments({200, 0.1});
  EXPECT_DOUBLE_EQ(m.mean, 20.0);
  EXPECT_DOUBLE_EQ(m.variance, 18.0);
  // 0.03 * 0.97 / 10000 = 2.91e-6; the printed 2.9e-7 is off by a factor of ten.
  EXPECT_NEAR(binomial_moments({10000, 0.03}).variance / 1e8, 2.91e-6, 1e-18);
  const auto z = binomial_moments({9, 0.0});
  EXPECT_EQ(z.mean, 0.0);
  EXPECT_EQ(z.variance, 0.0);
}

TEST(Binomial, Tail) {
  EXPECT_EQ(binomial_tail({50, 0.3}, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial_tail({4, 0.5}, 3), 5.0 / 16.0);
  // Every unit is on with probability 1 - 2e-9, so at least 150 of 200 is certain in double.
  const double p = -std::expm1(-20.0);
  EXPECT_EQ(binomial_tail({200, p}, 150), 1.0);
  EXPECT_EQ(1.0 - binomial_tail({200, p}, 150), 0.0);
}

TEST(Binomial, NormalizationAndMomentsFromPmf) {
  for (int n : {1, 7, 50, 200, 500}) {
    for (double p : {0.01, 0.3, 0.5, 0.97}) {
      double total = 0.0, mean = 0.0;
      for (int k = 0; k <= n; ++k) {
        total += binomial_pmf({n, p}, k);
        mean += k * binomial_pmf({n, p}, k);
      }
      double var = 0.0;
      for (int k = 0; k <= n; ++k) var += (k - mean) * (k - mean) * binomial_pmf({n, p}, k);
      const auto m = binomial_moments({n, p});
      EXPECT_NEAR(total, 1.0, 1e-10) << n << " " << p;
      EXPECT_NEAR(mean, m.mean, 1e-9 * std::max(1.0, m.mean));
      EXPECT_NEAR(var, m.variance, 1e-9 * std::max(1.0, m.variance));
    }
  }
}

TEST(ZScore, Values) {
  EXPECT_NEAR(z_score(60, 20, std::sqrt(18.0)), 9.428, 1e-3);
  EXPECT_EQ(z_score(3, 3, 2), 0.0);
  EXPECT_DOUBLE_EQ(z_score(25, 20, 5), 1.0);
  EXPECT_THROW(z_score(1, 0, 0), ik::DomainError);
}

// ---------------------------------------------------------------- two hypotheses

TEST(TwoHypothesis, WorkedProblems) {
  const auto dercum = posterior_two_hypothesis({0.5, 0.05, 0.0025});
  EXPECT_NEAR(dercum.posterior, 0.9524, 1e-4);
  EXPECT_NEAR(dercum.evidence, 0.02625, 1e-12);
  EXPECT_NEAR(posterior_two_hypothesis({0.01, 0.95, 0.05}).evidence, 0.059, 1e-12);
  EXPECT_NEAR(posterior_two_hypothesis({2.0 / 3.0, 0.85, 0.15}).posterior, 0.9189, 1e-4);
  EXPECT_NEAR(posterior_two_hypothesis({0.5, 1.0 / 20, 1.0 / 15}).posterior, 3.0 / 7.0, 1e-12);
  EXPECT_NEAR(posterior_two_hypothesis({0.2, 1.0 / 6, 1.0 / 4}).posterior, 1.0 / 7.0, 1e-12);
  const auto enigma = posterior_two_hypothesis({7.0 / 9, 6.0 / 7, 1.0 / 7});
  EXPECT_NEAR(enigma.posterior, 21.0 / 22.0, 1e-12);
  EXPECT_NEAR(enigma.evidence, 44.0 / 63.0, 1e-12);
  // P(two | at least one) with P(at least one) = 3/4: the "not A" branch never produces it.
  EXPECT_NEAR(posterior_two_hypothesis({1.0 / 3, 1.0, 0.0}).posterior, 1.0, 1e-12);
  EXPECT_NEAR(posterior_two_hypothesis({0.25, 1.0, 2.0 / 3}).posterior, 1.0 / 3.0, 1e-12);
}

TEST(TwoHypothesis, Properties) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double prior = u(rng), la = u(rng), lb = u(rng), s = u(rng);
    const double pa = posterior_two_hypothesis({prior, la, lb}).posterior;
    const double pn = posterior_two_hypothesis({1 - prior, lb, la}).posterior;
    EXPECT_NEAR(pa + pn, 1.0, 1e-15);
    EXPECT_NEAR(posterior_two_hypothesis({prior, s * la, s * lb}).posterior, pa, 1e-12);
    // Independent evidence: equal likelihoods leave the prior untouched.
    EXPECT_NEAR(posterior_two_hypothesis({prior, la, la}).posterior, prior, 1e-12);
  }
  EXPECT_THROW(posterior_two_hypothesis({0.5, 0.0, 0.0}), ik::DomainError);
  EXPECT_THROW(posterior_two_hypothesis({1.5, 0.1, 0.1}), ik::DomainError);
}

// ---------------------------------------------------------------- MLE / Fisher

TEST(Mle, Values) {
  const auto r = mle_binomial(300, 10000);
  EXPECT_DOUBLE_EQ(r.gamma_hat, 0.03);
  EXPECT_NEAR(r.variance, 2.91e-6, 1e-18);
  EXPECT_NEAR(r.se, 1.70587221092e-3, 1e-12);
  EXPECT_EQ(mle_binomial(0, 12).se, 0.0);
  EXPECT_DOUBLE_EQ(mle_binomial(50, 100).se, 0.05);
  EXPECT_THROW(mle_binomial(0, 0), ik::InvalidArgument);
  EXPECT_THROW(mle_binomial(5, 4), ik::InvalidArgument);
}

TEST(Fisher, ClosedForms) {
  EXPECT_DOUBLE_EQ(fisher_bernoulli(0.5), 4.0);
  EXPECT_DOUBLE_EQ(fisher_poisson(2.0), 0.5);
  EXPECT_NEAR(fisher_binomial(10000, 0.03) * 2.91e-6, 1.0, 1e-12);
  EXPECT_THROW(fisher_bernoulli(0.0), ik::DomainError);
  EXPECT_THROW(fisher_poisson(0.0), ik::DomainError);
}

TEST(Fisher, CramerRaoAttainedAtMle) {
  for (auto [y, n] : {std::pair{300, 10000}, {7, 20}, {50, 100}, {1, 3}}) {
    const auto r = mle_binomial(y, n);
    EXPECT_NEAR(r.variance * fisher_binomial(n, r.gamma_hat), 1.0, 1e-12);
  }
}

// ---------------------------------------------------------------- beta

TEST(Beta, PdfValues) {
  EXPECT_NEAR(beta_pdf({2, 7}, 0.5), 0.4375, 1e-12);
  EXPECT_NEAR(beta_pdf({1, 1}, 0.123), 1.0, 1e-14);
  EXPECT_NEAR(beta_pdf({2, 2}, 0.5), 1.5, 1e-14);
  EXPECT_NEAR(beta_pdf({1, 1}, 0.0), 1.0, 1e-14);
  EXPECT_EQ(beta_pdf({2, 3}, 0.0), 0.0);
  EXPECT_THROW(beta_pdf({0.5, 1}, 0.0), ik::DomainError);
  EXPECT_THROW(beta_pdf({2, 2}, 1.1), ik::DomainError);
  EXPECT_THROW(beta_pdf({0, 2}, 0.5), ik::DomainError);
}

TEST(Beta, Update) {
  const auto post = beta_binomial_update({2, 7}, 3, 10);
  EXPECT_EQ(post.a, 5.0);
  EXPECT_EQ(post.b, 14.0);
  const auto flat = beta_binomial_update({1, 1}, 4, 9);
  EXPECT_EQ(flat.a, 5.0);
  EXPECT_EQ(flat.b, 6.0);
  const auto same = beta_binomial_update({2.5, 3.5}, 0, 0);
  EXPECT_EQ(same.a, 2.5);
  EXPECT_EQ(same.b, 3.5);
  EXPECT_THROW(beta_binomial_update({1, 1}, 4, 3), ik::InvalidArgument);
}

TEST(Beta, SequentialUpdatesCompose) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> trials(0, 40);
  for (int i = 0; i < 100; ++i) {
    const int n1 = trials(rng), n2 = trials(rng);
    const int x1 = std::uniform_int_distribution<int>(0, n1)(rng);
    const int x2 = std::uniform_int_distribution<int>(0, n2)(rng);
    const auto step = beta_binomial_update(beta_binomial_update({1.5, 2.0}, x1, n1), x2, n2);
    const auto once = beta_binomial_update({1.5, 2.0}, x1 + x2, n1 + n2);
    EXPECT_EQ(step.a, once.a);
    EXPECT_EQ(step.b, once.b);
  }
}

TEST(Beta, UnnormalizedPosterior) {
  EXPECT_NEAR(unnormalized_posterior_density({2, 7}, 10, 3, 0.5), 0.05126953125, 1e-12);
  EXPECT_NEAR(unnormalized_posterior_density({1, 1}, 8, 2, 0.3), binomial_pmf({8, 0.3}, 2), 1e-15);
  // Ratio against the updated beta density does not depend on theta.
  const auto post = beta_binomial_update({2, 7}, 3, 10);
  const double ref = unnormalized_posterior_density({2, 7}, 10, 3, 0.5) / beta_pdf(post, 0.5);
  for (double t = 0.05; t < 1.0; t += 0.05)
    EXPECT_NEAR(unnormalized_posterior_density({2, 7}, 10, 3, t) / beta_pdf(post, t), ref, 1e-12);
}

// ---------------------------------------------------------------- discrete priors

TEST(DiscretePosterior, WorkedPrior) {
  const auto post = discrete_posterior(sol_prior(), 5, 5);
  EXPECT_NEAR(post[0], 0.96201905233205, 1e-12);
  EXPECT_NEAR(post[1], 0.00791785228257, 1e-12);
  EXPECT_NEAR(post[2], 0.03006309538538, 1e-12);
}

TEST(DiscretePosterior, DegenerateCases) {
  const DiscreteThetaPrior point({0.3, 0.7}, ik::DiscreteDist({1.0, 0.0}));
  EXPECT_EQ(discrete_posterior(point, 6, 2).probs(), point.weights.probs());
  const auto no_data = discrete_posterior(sol_prior(), 0, 0);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(no_data[j], sol_prior().weights[j], 1e-15);
  const DiscreteThetaPrior zero({0.0}, ik::DiscreteDist({1.0}));
  EXPECT_THROW(discrete_posterior(zero, 3, 2), ik::DomainError);
  EXPECT_THROW(DiscreteThetaPrior({0.2}, ik::DiscreteDist({0.5, 0.5})), ik::DimensionError);
}

TEST(DiscretePosterior, ConvergesToConjugateUpdate) {
  const BetaParams prior{2, 7};
  const int n = 10, x = 3;
  const int grid = 10000;
  std::vector<double> thetas(grid), w(grid);
  for (int i = 0; i < grid; ++i) {
    thetas[i] = (i + 0.5) / grid;
    w[i] = beta_pdf(prior, thetas[i]);
  }
  const DiscreteThetaPrior discrete(thetas, ik::DiscreteDist::normalized(w));
  const auto post = discrete_posterior(discrete, n, x);
  const auto conj = beta_binomial_update(prior, x, n);
  std::vector<double> target(grid);
  for (int i = 0; i < grid; ++i) target[i] = beta_pdf(conj, thetas[i]);
  const auto ref = ik::DiscreteDist::normalized(target);
  double tv = 0.0;
  for (int i = 0; i < grid; ++i) tv += std::fabs(post[i] - ref[i]);
  EXPECT_LT(0.5 * tv, 0.01);
}

TEST(PriorPredictive, WorkedPrior) {
  const auto pred = prior_predictive(sol_prior(), 5);
  const double expected[] = {0.26807745788323, 0.33887823913323, 0.22441848315329,
                             0.11617275913066, 0.04433211966307, 0.00812094103652};
  ASSERT_EQ(pred.size(), 6u);
  for (std::size_t y = 0; y < 6; ++y) EXPECT_NEAR(pred[y], expected[y], 1e-12) << y;
}

TEST(PriorPredictive, DegenerateCases) {
  const DiscreteThetaPrior point({0.3}, ik::DiscreteDist({1.0}));
  const auto pred = prior_predictive(point, 4);
  for (int y = 0; y <= 4; ++y) EXPECT_NEAR(pred[y], binomial_pmf({4, 0.3}, y), 1e-15);
  const auto empty = prior_predictive(sol_prior(), 0);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_DOUBLE_EQ(empty[0], 1.0);
}

// ---------------------------------------------------------------- misc

TEST(ExpTail, Values) {
  EXPECT_DOUBLE_EQ(exp_tail(20.0).below, 1.0 - std::exp(-20.0));
  EXPECT_EQ(exp_tail(0.0).below, 0.0);
  EXPECT_DOUBLE_EQ(exp_tail(std::log(2.0)).at_or_above, 0.5);
  EXPECT_THROW(exp_tail(-1.0), ik::DomainError);
}

TEST(MaxwellBoltzmann, Mode) {
  EXPECT_DOUBLE_EQ(mb_most_probable_speed(1, 1, 2), 1.0);
  EXPECT_NEAR(mb_most_probable_speed(kBoltzmann, 600, 4.65e-26) / mb_most_probable_speed(kBoltzmann, 300, 4.65e-26),
              std::sqrt(2.0), 1e-14);
  // Grid argmax of v^2 exp(-m v^2 / (2 kB T)).
  const double kb = kBoltzmann, t = 300.0, m = 4.65e-26;
  const double mode = mb_most_probable_speed(kb, t, m);
  double best_v = 0.0, best = -1.0;
  for (double v = 1.0; v < 3.0 * mode; v += mode * 1e-5) {
    const double f = v * v * std::exp(-m * v * v / (2 * kb * t));
    if (f > best) {
      best = f;
      best_v = v;
    }
  }
  EXPECT_NEAR(best_v / mode, 1.0, 1e-3);
  EXPECT_THROW(mb_most_probable_speed(1, 0, 1), ik::DomainError);
}
