#pragma once

#include <cstdint>
#include <string>

#include "attrpriv/distribution.hpp"
#include "attrpriv/framework.hpp"

namespace attrpriv {

// Infinity-Wasserstein distance between finite distributions on the real
// line, via the monotone quantile coupling (optimal in one dimension).
// Cumulative-mass comparisons use a 1e-12 tolerance.
double w_infinity(const DiscreteDistribution& mu, const DiscreteDistribution& nu);

// Distribution of sum_j X_1^j over n records when exactly a of them have
// X_2 = 1: the convolution Binomial(a, p1) * Binomial(n - a, p2).
DiscreteDistribution conditional_count_distribution(
    const BinaryDependenceModel& model, std::size_t a);

// Distribution of sum_j X_1^j when phi_1 = alpha + beta * phi_2:
// Binomial(n, phi_1). Throws when the induced phi_1 leaves [0,1].
DiscreteDistribution conditional_count_distribution_param(std::size_t n,
                                                          double phi2,
                                                          double alpha,
                                                          double beta);

struct PairDistance {
  std::size_t attribute = 0;
  std::size_t event_a = 0;
  std::size_t event_b = 0;
  std::size_t theta = 0;
  double distance = 0.0;
};

struct WassersteinReport {
  std::string mechanism = "wasserstein";
  std::vector<PairDistance> per_pair;
  double w = 0.0;      // supremum over pairs and thetas
  double scale = 0.0;  // W / epsilon
  double noise = 0.0;
  double output = 0.0;
  std::uint64_t seed = 0;
};

// Wasserstein Mechanism: W = sup over secret pairs and thetas of
// W_inf(mu_{a,theta}, mu_{b,theta}); releases F(X) + Lap(W / eps).
// Conditional output distributions are computed exactly for the binary
// record family and for parameter-network families with finite attribute
// domains; other configurations are rejected.
WassersteinReport wasserstein_mechanism(const Dataset& data,
                                        const QuerySpec& query,
                                        const PufferfishFramework& framework,
                                        double epsilon, std::uint64_t seed);

}  // namespace attrpriv
