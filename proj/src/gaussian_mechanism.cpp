#include "attrpriv/gaussian_mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "attrpriv/errors.hpp"
#include "attrpriv/normal.hpp"
#include "attrpriv/rng.hpp"

namespace attrpriv {

namespace {

void require_linear_instantiation(const PufferfishFramework& framework,
                                  const QuerySpec& query) {
  if (framework.notion() != PrivacyNotion::DatasetLevel) {
    throw ConfigError("config.mechanism",
                      "the Gaussian mechanism protects dataset-level secrets");
  }
  if (framework.theta.variant != DistributionClass::Variant::GaussianFamily) {
    throw ConfigError("config.mechanism",
                      "theta is not a Gaussian family; use apgmng with "
                      "explicit Gaussian approximations");
  }
  if (query.kind != QuerySpec::Kind::ColumnMean) {
    throw ConfigError("config.mechanism",
                      "the Gaussian mechanism supports column-mean queries");
  }
  for (const auto& s : framework.secrets) {
    if (s.g != SecretFunction::ColumnMean) {
      throw ConfigError("config.mechanism",
                        "Gaussian-family secrets must use column means");
    }
    if (s.attribute == query.attribute) {
      throw ConfigError("config.mechanism",
                        "secret attribute coincides with the queried attribute");
    }
  }
}

}  // namespace

ConditionalGaussian conditional_of_linear(const MultivariateGaussian& theta,
                                          std::size_t n, std::size_t query_attr,
                                          std::size_t secret_attr, double a) {
  if (query_attr >= theta.dim() || secret_attr >= theta.dim() ||
      query_attr == secret_attr) {
    throw ConfigError("config.gaussian", "bad attribute indices");
  }
  double vii = theta.cov[secret_attr][secret_attr];
  if (!(vii > 0.0)) {
    throw ConfigError("config.gaussian", "degenerate covariance: V_ii <= 0");
  }
  double vij = theta.cov[secret_attr][query_attr];
  double vjj = theta.cov[query_attr][query_attr];
  ConditionalGaussian out;
  out.mean = theta.mu[query_attr] + (vij / vii) * (a - theta.mu[secret_attr]);
  out.variance = (vjj - vij * vij / vii) / static_cast<double>(n);
  // PSD inputs can still produce a tiny negative value in floating point.
  out.variance = std::max(0.0, out.variance);
  return out;
}

double sensitivity_gaussian(const PufferfishFramework& framework,
                            const QuerySpec& query, const SecretSpec& secret,
                            std::size_t /*record_count*/) {
  require_linear_instantiation(framework, query);
  double diameter = secret.event_union_diameter();
  double best = 0.0;
  for (const auto& theta : framework.theta.gaussians) {
    double vii = theta.cov[secret.attribute][secret.attribute];
    double vij = theta.cov[secret.attribute][query.attribute];
    // |V_ij| rather than V_ij: the sensitivity is an absolute difference of
    // conditional expectations, so negative correlation counts equally.
    best = std::max(best, std::abs(vij) / vii * diameter);
  }
  return best;
}

namespace {

struct Calibration {
  std::map<std::size_t, double> sensitivities;
  std::map<std::size_t, double> min_conditional_var;
  double sigma2 = 0.0;
  double c = 0.0;
};

Calibration calibrate(const PufferfishFramework& framework,
                      const QuerySpec& query, std::size_t record_count,
                      const PrivacyParams& params) {
  params.validate();
  require_linear_instantiation(framework, query);
  Calibration cal;
  cal.c = params.gaussian_c();
  double worst = 0.0;
  for (const auto& secret : framework.secrets) {
    double delta_f = sensitivity_gaussian(framework, query, secret, record_count);
    double min_var = std::numeric_limits<double>::infinity();
    for (const auto& theta : framework.theta.gaussians) {
      min_var = std::min(min_var,
                         conditional_of_linear(theta, record_count,
                                               query.attribute, secret.attribute,
                                               theta.mu[secret.attribute])
                             .variance);
    }
    cal.sensitivities[secret.attribute] =
        std::max(cal.sensitivities[secret.attribute], delta_f);
    auto [it, inserted] =
        cal.min_conditional_var.try_emplace(secret.attribute, min_var);
    if (!inserted) it->second = std::min(it->second, min_var);
    double candidate = (cal.c * delta_f / params.epsilon) *
                           (cal.c * delta_f / params.epsilon) -
                       min_var;
    worst = std::max(worst, candidate);
  }
  cal.sigma2 = std::max(0.0, worst);
  return cal;
}

}  // namespace

double apgm_sigma2(const PufferfishFramework& framework, const QuerySpec& query,
                   std::size_t record_count, const PrivacyParams& params) {
  return calibrate(framework, query, record_count, params).sigma2;
}

GaussianMechanismReport apgm(const Dataset& data, const QuerySpec& query,
                             const PufferfishFramework& framework,
                             const PrivacyParams& params, std::uint64_t seed) {
  framework.validate(data.attribute_count());
  Calibration cal = calibrate(framework, query, data.record_count(), params);
  GaussianMechanismReport report;
  report.sensitivities = std::move(cal.sensitivities);
  report.min_conditional_var = std::move(cal.min_conditional_var);
  report.sigma2 = cal.sigma2;
  report.c = cal.c;
  report.seed = seed;
  double exact = evaluate_query(query, data);
  if (report.sigma2 > 0.0) {
    // apgm and apgmng share one stream: with identical calibration the two
    // algorithms are the same sampler and must agree on a seed.
    Rng rng = Rng::for_stream(seed, "gaussian");
    report.noise = rng.next_gaussian(std::sqrt(report.sigma2));
    report.output = exact + report.noise;
  } else {
    report.noise = 0.0;
    report.output = exact;
  }
  return report;
}

double accuracy_bound(const PufferfishFramework& framework,
                      const QuerySpec& query, std::size_t record_count,
                      const PrivacyParams& params, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("config.params", "beta must lie in (0,1)");
  }
  double sigma2 = apgm_sigma2(framework, query, record_count, params);
  if (sigma2 == 0.0) return 0.0;
  return std::sqrt(sigma2) * normal_inverse_cdf(1.0 - beta / 2.0);
}

double gaussian_inverse_cdf(double p) { return normal_inverse_cdf(p); }

}  // namespace attrpriv
