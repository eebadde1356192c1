#include <doctest.h>

#include <cmath>

#include "attrpriv/rng.hpp"

using attrpriv::Rng;

TEST_CASE("identical seed and stream reproduce the sequence") {
  Rng a = Rng::for_stream(42, "gaussian");
  Rng b = Rng::for_stream(42, "gaussian");
  for (int k = 0; k < 100; ++k) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different streams decorrelate") {
  Rng a = Rng::for_stream(42, "gaussian");
  Rng b = Rng::for_stream(42, "apmqm");
  int same = 0;
  for (int k = 0; k < 64; ++k) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("different seeds decorrelate within a stream") {
  Rng a = Rng::for_stream(1, "gaussian");
  Rng b = Rng::for_stream(2, "gaussian");
  int same = 0;
  for (int k = 0; k < 64; ++k) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("uniform draws stay inside the open unit interval") {
  Rng rng(7);
  for (int k = 0; k < 10000; ++k) {
    double u = rng.next_uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian sampler matches its first two moments") {
  const int n = 200000;
  const double sigma = 2.5;
  Rng rng(123);
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    double x = rng.next_gaussian(sigma);
    sum += x;
    sum2 += x * x;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  // standard errors: sigma/sqrt(n) for the mean, sqrt(2 sigma^4 / n) for
  // the variance of a Gaussian
  CHECK(std::abs(mean) < 5.0 * sigma / std::sqrt(double(n)));
  CHECK(std::abs(var - sigma * sigma) <
        5.0 * std::sqrt(2.0 * std::pow(sigma, 4) / n));
}

TEST_CASE("laplace sampler matches its first two moments") {
  const int n = 200000;
  const double b = 1.75;
  Rng rng(321);
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    double x = rng.next_laplace(b);
    sum += x;
    sum2 += x * x;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  // Var = 2b^2; fourth moment 24 b^4 gives Var(x^2) = 20 b^4.
  CHECK(std::abs(mean) < 5.0 * std::sqrt(2.0 * b * b / n));
  CHECK(std::abs(var - 2.0 * b * b) <
        5.0 * std::sqrt(20.0 * std::pow(b, 4) / n));
}

TEST_CASE("laplace scale zero would be a degenerate request") {
  Rng rng(5);
  // the mechanisms guard scale > 0 before drawing; the sampler itself is
  // exercised only with positive scales
  double x = rng.next_laplace(1.0);
  CHECK(std::isfinite(x));
}
