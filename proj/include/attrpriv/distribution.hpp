#pragma once

#include <utility>
#include <vector>

namespace attrpriv {

// Finite probability distribution on the real line. Support points are
// strictly increasing; probabilities are nonnegative and sum to 1 within
// 1e-9. Zero-probability atoms are permitted so two distributions can share
// a common support.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> points, std::vector<double> probs);

  // Builds from unordered atoms, merging duplicate support points.
  static DiscreteDistribution from_atoms(
      std::vector<std::pair<double, double>> atoms);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return points_.size(); }

  double min_support() const { return points_.front(); }
  double max_support() const { return points_.back(); }

  double mean() const;
  double variance() const;

  bool same_support(const DiscreteDistribution& other, double tol = 1e-12) const;

 private:
  std::vector<double> points_;
  std::vector<double> probs_;
};

// Binomial(n, p) on support {0, ..., n}.
DiscreteDistribution binomial_distribution(int n, double p);

// Distribution of the sum of two independent variables.
DiscreteDistribution convolve(const DiscreteDistribution& a,
                              const DiscreteDistribution& b);

// Affine image x -> scale*x + shift of the support (scale != 0).
DiscreteDistribution affine_image(const DiscreteDistribution& d, double scale,
                                  double shift);

// Mixture sum_k w_k * d_k with nonnegative weights summing to 1.
DiscreteDistribution mixture(const std::vector<DiscreteDistribution>& parts,
                             const std::vector<double>& weights);

}  // namespace attrpriv
