#include "attrpriv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "attrpriv/errors.hpp"
#include "attrpriv/normal.hpp"
#include "attrpriv/rng.hpp"

namespace attrpriv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double max_divergence(const DiscreteDistribution& p,
                      const DiscreteDistribution& q) {
  if (!p.same_support(q)) {
    throw ConfigError("config.divergence",
                      "max-divergence requires identical supports");
  }
  double best = -kInf;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double px = p.probs()[k], qx = q.probs()[k];
    if (px <= 0.0) continue;
    if (qx <= 0.0) return kInf;
    best = std::max(best, std::log(px / qx));
  }
  // p sums to 1, so at least one atom has p_x > 0.
  return best;
}

double approx_max_divergence(const DiscreteDistribution& p,
                             const DiscreteDistribution& q, double eta) {
  if (!p.same_support(q)) {
    throw ConfigError("config.divergence",
                      "approximate max-divergence requires identical supports");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ConfigError("config.divergence", "eta must lie in (0,1)");
  }
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](std::size_t k) {
    double px = p.probs()[k], qx = q.probs()[k];
    if (qx <= 0.0) return px > 0.0 ? kInf : 0.0;
    return px / qx;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
  double best = -kInf;
  double cum_p = 0.0, cum_q = 0.0;
  for (std::size_t k : order) {
    cum_p += p.probs()[k];
    cum_q += q.probs()[k];
    if (cum_p < eta) continue;
    double num = cum_p - eta;
    if (num <= 0.0) continue;  // ln(0) would only lower the supremum
    if (cum_q <= 0.0) return kInf;
    best = std::max(best, std::log(num / cum_q));
  }
  return best;
}

double symmetric_approx_divergence(const DiscreteDistribution& p,
                                   const DiscreteDistribution& q, double eta) {
  return std::max(approx_max_divergence(p, q, eta),
                  approx_max_divergence(q, p, eta));
}

double certify_approximation(const DiscreteDistribution& f,
                             const GaussianApprox& approx, double eta,
                             int bins) {
  if (bins < 2) {
    throw ConfigError("config.divergence", "bins must be at least 2");
  }
  if (!(approx.variance > 0.0)) {
    throw ConfigError("config.divergence", "approximation variance must be positive");
  }
  double sd = std::sqrt(approx.variance);
  double lo = std::min(f.min_support(), approx.mean - 6.0 * sd);
  double hi = std::max(f.max_support(), approx.mean + 6.0 * sd);
  double width = (hi - lo) / bins;
  std::vector<double> centers(bins), f_mass(bins, 0.0), g_mass(bins, 0.0);
  for (int b = 0; b < bins; ++b) centers[b] = lo + (b + 0.5) * width;
  for (std::size_t k = 0; k < f.size(); ++k) {
    int b = static_cast<int>((f.points()[k] - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    f_mass[b] += f.probs()[k];
  }
  for (int b = 0; b < bins; ++b) {
    double a = lo + b * width, c = lo + (b + 1) * width;
    g_mass[b] = normal_cdf((c - approx.mean) / sd) - normal_cdf((a - approx.mean) / sd);
  }
  // Compare on the cells f actually occupies, renormalizing the Gaussian
  // cell masses over them. A point-mass distribution against a density is
  // degenerate at fine resolutions (the density's mass on atom-free cells
  // would dominate); restricting to occupied cells yields a finite shape
  // comparison, which is what this estimate is for.
  std::vector<double> cs, fs, gs;
  double g_total = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (f_mass[b] <= 0.0) continue;
    cs.push_back(centers[b]);
    fs.push_back(f_mass[b]);
    gs.push_back(g_mass[b]);
    g_total += g_mass[b];
  }
  if (!(g_total > 0.0)) return std::numeric_limits<double>::infinity();
  for (double& g : gs) g /= g_total;
  DiscreteDistribution fb(cs, fs);
  DiscreteDistribution gb(cs, gs);
  return symmetric_approx_divergence(fb, gb, eta);
}

void DivergenceBudget::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw ConfigError("config.divergence", "eta must lie in (0,1)");
  }
  if (!(lambda_eta >= 0.0)) {
    throw ConfigError("config.divergence", "lambda_eta must be nonnegative");
  }
}

EffectivePrivacy effective_privacy(const PrivacyParams& params,
                                   const DivergenceBudget& budget) {
  params.validate();
  budget.validate();
  EffectivePrivacy out;
  out.epsilon = params.epsilon + 2.0 * budget.lambda_eta;
  out.delta = std::exp(budget.lambda_eta) * params.delta + budget.eta;
  if (out.delta >= 1.0) {
    out.delta = 1.0;
    out.delta_clamped = true;
  }
  return out;
}

GaussianMechanismReport apgmng(const Dataset& data, const QuerySpec& query,
                               const ApproximationSet& approximations,
                               const PufferfishFramework& framework,
                               const PrivacyParams& params, std::uint64_t seed) {
  framework.validate(data.attribute_count());
  params.validate();
  if (framework.notion() != PrivacyNotion::DatasetLevel) {
    throw ConfigError("config.mechanism",
                      "apgmng protects dataset-level secrets");
  }
  double c = params.gaussian_c();
  std::size_t theta_count = framework.theta.member_count();
  GaussianMechanismReport report;
  report.mechanism = "apgmng";
  report.c = c;
  report.seed = seed;
  double worst = 0.0;
  for (const auto& secret : framework.secrets) {
    auto table = approximations.find(secret.attribute);
    if (table == approximations.end()) {
      throw ConfigError("config.approximation",
                        "no approximations supplied for a sensitive attribute");
    }
    double delta_f = 0.0;
    double min_var = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < theta_count; ++t) {
      std::vector<double> means;
      double shared_var = -1.0;
      for (std::size_t a = 0; a < secret.events.size(); ++a) {
        auto it = table->second.find({a, t});
        if (it == table->second.end()) {
          throw ConfigError("config.approximation",
                            "missing approximation for a (secret event, theta) pair");
        }
        const auto& fa = it->second;
        if (!(fa.variance > 0.0)) {
          throw ConfigError("config.approximation",
                            "approximation variance must be positive");
        }
        if (shared_var < 0.0) {
          shared_var = fa.variance;
        } else if (std::abs(shared_var - fa.variance) > 1e-9) {
          throw ConfigError("config.approximation",
                            "approximations for one (attribute, theta) must share "
                            "a single variance");
        }
        means.push_back(fa.mean);
      }
      auto [lo, hi] = std::minmax_element(means.begin(), means.end());
      delta_f = std::max(delta_f, *hi - *lo);
      min_var = std::min(min_var, shared_var);
    }
    report.sensitivities[secret.attribute] =
        std::max(report.sensitivities[secret.attribute], delta_f);
    auto [it, inserted] =
        report.min_conditional_var.try_emplace(secret.attribute, min_var);
    if (!inserted) it->second = std::min(it->second, min_var);
    worst = std::max(worst, (c * delta_f / params.epsilon) *
                                (c * delta_f / params.epsilon) -
                                min_var);
  }
  report.sigma2 = std::max(0.0, worst);
  double exact = evaluate_query(query, data);
  if (report.sigma2 > 0.0) {
    Rng rng = Rng::for_stream(seed, "gaussian");
    report.noise = rng.next_gaussian(std::sqrt(report.sigma2));
    report.output = exact + report.noise;
  } else {
    report.noise = 0.0;
    report.output = exact;
  }
  return report;
}

}  // namespace attrpriv
