#pragma once

#include <cstdint>
#include <map>

#include "attrpriv/framework.hpp"

namespace attrpriv {

struct ConditionalGaussian {
  double mean = 0.0;
  double variance = 0.0;
};

// Conditional law of the column-j mean given the column-i mean equals a,
// when the attributes are jointly Gaussian:
//   mean = mu_j + (V_ij / V_ii) (a - mu_i),
//   variance = (V_jj - V_ij^2 / V_ii) / n.
ConditionalGaussian conditional_of_linear(const MultivariateGaussian& theta,
                                          std::size_t n, std::size_t query_attr,
                                          std::size_t secret_attr, double a);

// Sensitivity of a column-mean query with respect to the secret on
// attribute i: max over theta of (|V_ij| / V_ii) * d(U), where d(U) is the
// diameter of the union of the declared secret events.
double sensitivity_gaussian(const PufferfishFramework& framework,
                            const QuerySpec& query, const SecretSpec& secret,
                            std::size_t record_count);

struct GaussianMechanismReport {
  std::string mechanism = "apgm";
  std::map<std::size_t, double> sensitivities;       // per sensitive attribute
  std::map<std::size_t, double> min_conditional_var;
  double sigma2 = 0.0;
  double c = 0.0;
  double noise = 0.0;
  double output = 0.0;
  std::uint64_t seed = 0;
};

// Attribute-Private Gaussian Mechanism: releases F(X) plus N(0, sigma^2)
// noise with sigma^2 = max(0, max_i [(c Delta_i F / eps)^2 - min_theta
// Var(F|g_i, theta)]). Requires a Gaussian family, dataset-level secrets,
// mean query and mean secret functions, and delta > 0.
GaussianMechanismReport apgm(const Dataset& data, const QuerySpec& query,
                             const PufferfishFramework& framework,
                             const PrivacyParams& params, std::uint64_t seed);

// Calibrated noise variance of apgm without touching the data (depends only
// on the framework, query shape and record count).
double apgm_sigma2(const PufferfishFramework& framework, const QuerySpec& query,
                   std::size_t record_count, const PrivacyParams& params);

// (alpha, beta)-accuracy half-width: alpha = sigma * Phi^{-1}(1 - beta/2).
double accuracy_bound(const PufferfishFramework& framework,
                      const QuerySpec& query, std::size_t record_count,
                      const PrivacyParams& params, double beta);

// Standard normal quantile, re-exported here as the operation surface of
// the accuracy bound.
double gaussian_inverse_cdf(double p);

}  // namespace attrpriv
