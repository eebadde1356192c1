#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "attrpriv/distribution.hpp"
#include "attrpriv/framework.hpp"
#include "attrpriv/gaussian_mechanism.hpp"

namespace attrpriv {

// Max-divergence D(p||q) = max over atoms of ln(p_x/q_x); +infinity when
// some p_x > 0 has q_x = 0. Requires identical supports.
double max_divergence(const DiscreteDistribution& p,
                      const DiscreteDistribution& q);

// eta-approximate max-divergence: sup over subsets T with P_p(T) >= eta of
// ln((P_p(T) - eta) / P_q(T)). Computed by a prefix scan over atoms sorted
// by decreasing ratio p_x/q_x (the optimizer is a superlevel set of the
// ratio).
double approx_max_divergence(const DiscreteDistribution& p,
                             const DiscreteDistribution& q, double eta);

// Symmetrised variant: max of the two directed approximate divergences.
double symmetric_approx_divergence(const DiscreteDistribution& p,
                                   const DiscreteDistribution& q, double eta);

struct GaussianApprox {
  double mean = 0.0;
  double variance = 1.0;
};

// Bins f and the Gaussian approximation onto a common grid (f's support
// extended by 6 approximation standard deviations) and returns the
// symmetric approximate divergence of the binned pair. An estimate of
// lambda_eta, not a certified bound.
double certify_approximation(const DiscreteDistribution& f,
                             const GaussianApprox& approx, double eta,
                             int bins);

struct DivergenceBudget {
  double eta = 0.0;
  double lambda_eta = 0.0;

  void validate() const;
};

struct EffectivePrivacy {
  double epsilon = 0.0;
  double delta = 0.0;
  bool delta_clamped = false;  // set when the raw delta reached 1
};

// Theorem-4.3 mapping: (eps, delta) -> (eps + 2 lambda, e^lambda delta + eta).
EffectivePrivacy effective_privacy(const PrivacyParams& params,
                                   const DivergenceBudget& budget);

// Gaussian approximations keyed by (sensitive attribute, event index,
// theta index). Within one (attribute, theta) all variances must agree.
using ApproximationSet =
    std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>,
                                   GaussianApprox>>;

// Attribute-Private Gaussian Mechanism for non-Gaussian data: identical
// calibration to apgm but with sensitivities and variances read off the
// supplied approximations.
GaussianMechanismReport apgmng(const Dataset& data, const QuerySpec& query,
                               const ApproximationSet& approximations,
                               const PufferfishFramework& framework,
                               const PrivacyParams& params, std::uint64_t seed);

}  // namespace attrpriv
