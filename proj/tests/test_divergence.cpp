#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "attrpriv/divergence.hpp"
#include "attrpriv/errors.hpp"
#include "attrpriv/normal.hpp"
#include "helpers.hpp"

using attrpriv::DiscreteDistribution;
using attrpriv::DivergenceBudget;
using attrpriv::GaussianApprox;
using attrpriv::PrivacyParams;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("max divergence reference cases") {
  DiscreteDistribution p({0.0, 1.0}, {0.5, 0.5});
  DiscreteDistribution q({0.0, 1.0}, {0.25, 0.75});
  CHECK(attrpriv::max_divergence(p, q) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(attrpriv::max_divergence(q, p) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
  CHECK(attrpriv::max_divergence(p, p) == doctest::Approx(0.0));
  DiscreteDistribution z({0.0, 1.0}, {1.0, 0.0});
  CHECK(attrpriv::max_divergence(p, z) == kInf);
  DiscreteDistribution shifted({0.0, 2.0}, {0.5, 0.5});
  CHECK_THROWS_AS(attrpriv::max_divergence(p, shifted), attrpriv::ConfigError);
}

TEST_CASE("approximate divergence reference case") {
  // T = {1} is optimal: ln((0.5 - 0.1) / 0.25)
  DiscreteDistribution p({0.0, 1.0}, {0.5, 0.5});
  DiscreteDistribution q({0.0, 1.0}, {0.75, 0.25});
  CHECK(attrpriv::approx_max_divergence(p, q, 0.1) ==
        doctest::Approx(std::log(0.4 / 0.25)).epsilon(1e-14));
  CHECK_THROWS_AS(attrpriv::approx_max_divergence(p, q, 0.0),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(attrpriv::approx_max_divergence(p, q, 1.0),
                  attrpriv::ConfigError);
}

TEST_CASE("prefix scan agrees with exhaustive subset search") {
  testutil::TestRng rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    int size = rng.range(2, 12);
    auto p = testutil::random_distribution(rng, size);
    // share p's support so the divergences are defined
    auto q = DiscreteDistribution(
        p.points(), testutil::random_distribution(rng, size).probs());
    double eta = 0.02 + 0.4 * rng.uniform();

    double got_max = attrpriv::max_divergence(p, q);
    double want_max = testutil::subset_max_divergence(p, q);
    if (std::isinf(want_max)) {
      CHECK(std::isinf(got_max));
    } else {
      CHECK(got_max == doctest::Approx(want_max).epsilon(1e-9));
    }

    double got = attrpriv::approx_max_divergence(p, q, eta);
    double want = testutil::subset_approx_divergence(p, q, eta);
    if (std::isinf(want)) {
      CHECK(std::isinf(got));
    } else {
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
    // discounting mass can only shrink the divergence
    if (!std::isinf(got_max)) CHECK(got <= got_max + 1e-12);

    double sym = attrpriv::symmetric_approx_divergence(p, q, eta);
    double rev = attrpriv::approx_max_divergence(q, p, eta);
    CHECK(sym == std::max(got, rev));
  }
}

TEST_CASE("approximate divergence is nonincreasing in eta") {
  testutil::TestRng rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    int size = rng.range(3, 10);
    auto p = testutil::random_distribution(rng, size, false);
    auto q = DiscreteDistribution(
        p.points(), testutil::random_distribution(rng, size, false).probs());
    double prev = kInf;
    for (double eta : {0.01, 0.05, 0.1, 0.3, 0.6}) {
      double d = attrpriv::approx_max_divergence(p, q, eta);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("certifying a binned Gaussian against itself gives ln(1 - eta)") {
  const double mean = 1.0, var = 2.25, sd = 1.5;
  const int bins = 64;
  const double eta = 0.05;
  double lo = mean - 6.0 * sd, hi = mean + 6.0 * sd;
  double width = (hi - lo) / bins;
  std::vector<double> pts(bins), probs(bins);
  double total = 0.0;
  for (int b = 0; b < bins; ++b) {
    pts[b] = lo + (b + 0.5) * width;
    probs[b] = attrpriv::normal_cdf((lo + (b + 1) * width - mean) / sd) -
               attrpriv::normal_cdf((lo + b * width - mean) / sd);
    total += probs[b];
  }
  for (double& p : probs) p /= total;
  DiscreteDistribution f(pts, probs);
  double lambda = attrpriv::certify_approximation(f, {mean, var}, eta, bins);
  CHECK(lambda == doctest::Approx(std::log(1.0 - eta)).epsilon(1e-6));
}

TEST_CASE("certification regression and monotonicity in approximation quality") {
  auto f = attrpriv::binomial_distribution(4, 0.6);
  double good = attrpriv::certify_approximation(f, {2.4, 0.96}, 0.05, 64);
  CHECK(good == doctest::Approx(-0.035401573139563297).epsilon(1e-12));
  double shifted = attrpriv::certify_approximation(f, {3.4, 0.96}, 0.05, 64);
  CHECK(shifted > good);
  CHECK_THROWS_AS(attrpriv::certify_approximation(f, {2.4, 0.96}, 0.05, 1),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(attrpriv::certify_approximation(f, {2.4, 0.0}, 0.05, 64),
                  attrpriv::ConfigError);
}

TEST_CASE("effective privacy arithmetic and clamping") {
  PrivacyParams params{1.0, 1e-5};
  auto out = attrpriv::effective_privacy(params, {0.01, 0.1});
  CHECK(out.epsilon == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(out.delta == doctest::Approx(std::exp(0.1) * 1e-5 + 0.01).epsilon(1e-15));
  CHECK_FALSE(out.delta_clamped);

  auto clamped = attrpriv::effective_privacy(PrivacyParams{1.0, 0.5}, {0.9, 5.0});
  CHECK(clamped.delta == 1.0);
  CHECK(clamped.delta_clamped);

  CHECK_THROWS_AS(attrpriv::effective_privacy(params, {0.0, 0.1}),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(attrpriv::effective_privacy(params, {0.01, -0.1}),
                  attrpriv::ConfigError);
}

namespace {

// Gaussian-family framework: secret on attribute 0 with point events {-2},
// {2}; queried attribute 1. Chosen so every derived quantity is exact in
// floating point (V_ij / V_ii = 0.25).
attrpriv::PufferfishFramework reduction_framework() {
  attrpriv::MultivariateGaussian g;
  g.mu = {0.0, 0.0};
  g.cov = {{4.0, 1.0}, {1.0, 9.0}};
  attrpriv::SecretEvent lo, hi;
  lo.kind = attrpriv::SecretEvent::Kind::Points;
  lo.points = {-2.0};
  hi.kind = attrpriv::SecretEvent::Kind::Points;
  hi.points = {2.0};
  attrpriv::SecretSpec s;
  s.notion = attrpriv::PrivacyNotion::DatasetLevel;
  s.attribute = 0;
  s.g = attrpriv::SecretFunction::ColumnMean;
  s.events = {lo, hi};
  attrpriv::PufferfishFramework fw;
  fw.secrets = {s};
  fw.sensitive = {0};
  fw.theta.variant = attrpriv::DistributionClass::Variant::GaussianFamily;
  fw.theta.gaussians = {g};
  return fw;
}

}  // namespace

TEST_CASE("apgmng with exact conditional approximations reproduces apgm") {
  auto fw = reduction_framework();
  auto q = attrpriv::QuerySpec::column_mean(1);
  attrpriv::Dataset data(
      {"x", "y"},
      {attrpriv::AttributeDomain::interval(-10, 10),
       attrpriv::AttributeDomain::interval(-10, 10)},
      {{1.0, -2.0, 3.0, 0.5}, {0.5, 1.5, 2.75, -1.0}});
  PrivacyParams params{1.0, 1e-5};

  attrpriv::ApproximationSet approx;
  for (std::size_t a = 0; a < 2; ++a) {
    auto cg = attrpriv::conditional_of_linear(fw.theta.gaussians[0],
                                              data.record_count(), 1, 0,
                                              fw.secrets[0].events[a].points[0]);
    approx[0][{a, 0}] = GaussianApprox{cg.mean, cg.variance};
  }

  auto direct = attrpriv::apgm(data, q, fw, params, 97);
  auto viang = attrpriv::apgmng(data, q, approx, fw, params, 97);
  CHECK(viang.sigma2 == direct.sigma2);
  CHECK(viang.c == direct.c);
  CHECK(viang.noise == direct.noise);
  CHECK(viang.output == direct.output);
  CHECK(viang.sensitivities.at(0) == direct.sensitivities.at(0));
  CHECK(viang.min_conditional_var.at(0) == direct.min_conditional_var.at(0));
}

TEST_CASE("apgmng rejects incomplete or inconsistent approximation sets") {
  auto fw = reduction_framework();
  auto q = attrpriv::QuerySpec::column_mean(1);
  attrpriv::Dataset data(
      {"x", "y"},
      {attrpriv::AttributeDomain::interval(-10, 10),
       attrpriv::AttributeDomain::interval(-10, 10)},
      {{1.0, -2.0}, {0.5, 1.5}});
  PrivacyParams params{1.0, 1e-5};

  attrpriv::ApproximationSet empty;
  CHECK_THROWS_AS(attrpriv::apgmng(data, q, empty, fw, params, 1),
                  attrpriv::ConfigError);

  attrpriv::ApproximationSet partial;
  partial[0][{0, 0}] = GaussianApprox{0.0, 1.0};
  CHECK_THROWS_AS(attrpriv::apgmng(data, q, partial, fw, params, 1),
                  attrpriv::ConfigError);

  attrpriv::ApproximationSet uneven;
  uneven[0][{0, 0}] = GaussianApprox{-0.5, 1.0};
  uneven[0][{1, 0}] = GaussianApprox{0.5, 2.0};  // variance differs
  CHECK_THROWS_AS(attrpriv::apgmng(data, q, uneven, fw, params, 1),
                  attrpriv::ConfigError);

  attrpriv::ApproximationSet degenerate;
  degenerate[0][{0, 0}] = GaussianApprox{-0.5, 0.0};
  degenerate[0][{1, 0}] = GaussianApprox{0.5, 0.0};
  CHECK_THROWS_AS(attrpriv::apgmng(data, q, degenerate, fw, params, 1),
                  attrpriv::ConfigError);
}
