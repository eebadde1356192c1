#include <doctest.h>

#include <cmath>

#include "attrpriv/distribution.hpp"
#include "attrpriv/errors.hpp"

using attrpriv::DiscreteDistribution;

TEST_CASE("construction validates support order and probability mass") {
  CHECK_THROWS_AS(DiscreteDistribution({1.0, 0.5}, {0.5, 0.5}),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(DiscreteDistribution({0.0, 1.0}, {0.6, 0.6}),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(DiscreteDistribution({0.0, 1.0}, {-0.1, 1.1}),
                  attrpriv::ConfigError);
  CHECK_THROWS_AS(DiscreteDistribution({0.0, 0.0}, {0.5, 0.5}),
                  attrpriv::ConfigError);
  CHECK_NOTHROW(DiscreteDistribution({0.0, 1.0}, {0.0, 1.0}));
}

TEST_CASE("from_atoms merges duplicate support points") {
  auto d = DiscreteDistribution::from_atoms({{1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}});
  REQUIRE(d.size() == 2);
  CHECK(d.points()[0] == 0.0);
  CHECK(d.probs()[1] == doctest::Approx(0.5));
}

TEST_CASE("binomial reference masses") {
  auto d = attrpriv::binomial_distribution(4, 0.6);
  REQUIRE(d.size() == 5);
  CHECK(d.probs()[0] == doctest::Approx(0.0256).epsilon(1e-12));
  CHECK(d.probs()[1] == doctest::Approx(0.1536).epsilon(1e-12));
  CHECK(d.probs()[2] == doctest::Approx(0.3456).epsilon(1e-12));
  CHECK(d.probs()[3] == doctest::Approx(0.3456).epsilon(1e-12));
  CHECK(d.probs()[4] == doctest::Approx(0.1296).epsilon(1e-12));
}

TEST_CASE("binomial degenerate probabilities are exact point masses") {
  auto z = attrpriv::binomial_distribution(5, 0.0);
  CHECK(z.probs()[0] == 1.0);
  auto o = attrpriv::binomial_distribution(5, 1.0);
  CHECK(o.probs()[5] == 1.0);
}

TEST_CASE("binomial masses sum to one at larger n") {
  auto d = attrpriv::binomial_distribution(50, 0.37);
  double total = 0.0;
  for (double p : d.probs()) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convolution of binomials equals the combined binomial") {
  auto a = attrpriv::binomial_distribution(3, 0.3);
  auto b = attrpriv::binomial_distribution(4, 0.3);
  auto c = attrpriv::convolve(a, b);
  auto direct = attrpriv::binomial_distribution(7, 0.3);
  REQUIRE(c.size() == direct.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK(c.probs()[k] == doctest::Approx(direct.probs()[k]).epsilon(1e-12));
  }
}

TEST_CASE("affine image rescales support and moments") {
  auto d = attrpriv::binomial_distribution(4, 0.5);
  auto img = attrpriv::affine_image(d, 0.25, 1.0);
  CHECK(img.mean() == doctest::Approx(0.25 * d.mean() + 1.0).epsilon(1e-12));
  CHECK(img.variance() == doctest::Approx(0.0625 * d.variance()).epsilon(1e-12));
  auto flipped = attrpriv::affine_image(d, -1.0, 0.0);
  CHECK(flipped.min_support() == -4.0);
  CHECK(flipped.probs()[0] == doctest::Approx(d.probs()[4]).epsilon(1e-15));
}

TEST_CASE("mixture combines masses with the given weights") {
  DiscreteDistribution a({0.0, 1.0}, {1.0, 0.0});
  DiscreteDistribution b({1.0, 2.0}, {0.0, 1.0});
  auto mix = attrpriv::mixture({a, b}, {0.25, 0.75});
  REQUIRE(mix.size() == 3);
  CHECK(mix.probs()[0] == doctest::Approx(0.25));
  CHECK(mix.probs()[2] == doctest::Approx(0.75));
}

TEST_CASE("mean and variance agree with direct sums") {
  DiscreteDistribution d({-1.0, 0.0, 2.0}, {0.2, 0.5, 0.3});
  double mean = -1.0 * 0.2 + 2.0 * 0.3;
  double var = 0.2 * std::pow(-1.0 - mean, 2) + 0.5 * std::pow(0.0 - mean, 2) +
               0.3 * std::pow(2.0 - mean, 2);
  CHECK(d.mean() == doctest::Approx(mean).epsilon(1e-14));
  CHECK(d.variance() == doctest::Approx(var).epsilon(1e-14));
}

TEST_CASE("same_support distinguishes shifted grids") {
  DiscreteDistribution a({0.0, 1.0}, {0.5, 0.5});
  DiscreteDistribution b({0.0, 1.0}, {0.1, 0.9});
  DiscreteDistribution c({0.0, 1.5}, {0.5, 0.5});
  CHECK(a.same_support(b));
  CHECK_FALSE(a.same_support(c));
}
