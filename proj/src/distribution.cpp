#include "attrpriv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "attrpriv/errors.hpp"

namespace attrpriv {

DiscreteDistribution::DiscreteDistribution(std::vector<double> points,
                                           std::vector<double> probs)
    : points_(std::move(points)), probs_(std::move(probs)) {
  if (points_.empty() || points_.size() != probs_.size()) {
    throw ConfigError("config.distribution", "empty or mismatched atom lists");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k])) {
      throw ConfigError("config.distribution", "non-finite support point");
    }
    if (k > 0 && !(points_[k] > points_[k - 1])) {
      throw ConfigError("config.distribution",
                        "support points must be strictly increasing");
    }
    if (probs_[k] < 0.0) {
      throw ConfigError("config.distribution", "negative probability");
    }
    total += probs_[k];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("config.distribution", "probabilities must sum to 1");
  }
}

DiscreteDistribution DiscreteDistribution::from_atoms(
    std::vector<std::pair<double, double>> atoms) {
  std::map<double, double> merged;
  for (const auto& [x, p] : atoms) merged[x] += p;
  std::vector<double> pts, prs;
  pts.reserve(merged.size());
  prs.reserve(merged.size());
  for (const auto& [x, p] : merged) {
    pts.push_back(x);
    prs.push_back(p);
  }
  return DiscreteDistribution(std::move(pts), std::move(prs));
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) m += points_[k] * probs_[k];
  return m;
}

double DiscreteDistribution::variance() const {
  double m = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    v += probs_[k] * (points_[k] - m) * (points_[k] - m);
  }
  return v;
}

bool DiscreteDistribution::same_support(const DiscreteDistribution& other,
                                        double tol) const {
  if (size() != other.size()) return false;
  for (std::size_t k = 0; k < size(); ++k) {
    if (std::abs(points_[k] - other.points_[k]) > tol) return false;
  }
  return true;
}

DiscreteDistribution binomial_distribution(int n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0) {
    throw ConfigError("config.distribution", "invalid binomial parameters");
  }
  std::vector<double> pts(n + 1), prs(n + 1);
  // Recurrence on the pmf; exact at the endpoints p = 0 and p = 1.
  for (int k = 0; k <= n; ++k) {
    pts[k] = static_cast<double>(k);
    double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0);
    double term;
    if (p == 0.0) {
      term = (k == 0) ? 1.0 : 0.0;
    } else if (p == 1.0) {
      term = (k == n) ? 1.0 : 0.0;
    } else {
      term = std::exp(logc + k * std::log(p) + (n - k) * std::log(1.0 - p));
    }
    prs[k] = term;
  }
  double total = std::accumulate(prs.begin(), prs.end(), 0.0);
  for (double& q : prs) q /= total;
  return DiscreteDistribution(std::move(pts), std::move(prs));
}

DiscreteDistribution convolve(const DiscreteDistribution& a,
                              const DiscreteDistribution& b) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      atoms.emplace_back(a.points()[i] + b.points()[j],
                         a.probs()[i] * b.probs()[j]);
    }
  }
  return DiscreteDistribution::from_atoms(std::move(atoms));
}

DiscreteDistribution affine_image(const DiscreteDistribution& d, double scale,
                                  double shift) {
  if (scale == 0.0) {
    throw ConfigError("config.distribution", "affine_image requires scale != 0");
  }
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    atoms.emplace_back(scale * d.points()[k] + shift, d.probs()[k]);
  }
  return DiscreteDistribution::from_atoms(std::move(atoms));
}

DiscreteDistribution mixture(const std::vector<DiscreteDistribution>& parts,
                             const std::vector<double>& weights) {
  if (parts.empty() || parts.size() != weights.size()) {
    throw ConfigError("config.distribution", "mixture arity mismatch");
  }
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t j = 0; j < parts[k].size(); ++j) {
      atoms.emplace_back(parts[k].points()[j], weights[k] * parts[k].probs()[j]);
    }
  }
  return DiscreteDistribution::from_atoms(std::move(atoms));
}

}  // namespace attrpriv
