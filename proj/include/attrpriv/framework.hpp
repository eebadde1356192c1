#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "attrpriv/bayesnet.hpp"
#include "attrpriv/dataset.hpp"
#include "attrpriv/query.hpp"

namespace attrpriv {

// Mean vector and covariance matrix of one multivariate-Gaussian member of
// the distribution class. Validated symmetric and PSD (eigenvalues >= -1e-9).
struct MultivariateGaussian {
  std::vector<double> mu;
  std::vector<std::vector<double>> cov;

  std::size_t dim() const { return mu.size(); }
  void validate() const;
};

// Two correlated binary attributes over n records:
//   P(X_1 = 1 | X_2 = 1) = p1,  P(X_1 = 1 | X_2 = 0) = p2.
struct BinaryDependenceModel {
  std::size_t n = 0;
  double p1 = 0.0;
  double p2 = 0.0;

  void validate() const;
};

// One event U_a of a secret: a real interval or a finite point set.
struct SecretEvent {
  enum class Kind { Interval, Points };
  Kind kind = Kind::Points;
  double lo = 0.0;  // Interval only
  double hi = 0.0;
  std::vector<double> points;  // Points only

  bool contains(double x) const;
  bool overlaps(const SecretEvent& other) const;
};

enum class PrivacyNotion { DatasetLevel, Distributional };

enum class SecretFunction { ColumnMean, ColumnSum };

// Which facts about attribute `attribute` must stay indistinguishable. For
// dataset-level secrets the protected value is g(X_i) (a column mean or
// sum); for distributional secrets it is the parameter phi_i. Events are
// pairwise disjoint; every unordered pair of events forms a secret pair.
struct SecretSpec {
  PrivacyNotion notion = PrivacyNotion::DatasetLevel;
  std::size_t attribute = 0;
  SecretFunction g = SecretFunction::ColumnMean;  // dataset-level only
  std::vector<SecretEvent> events;

  void validate() const;
  // Diameter of the union of the declared events; throws if unbounded.
  double event_union_diameter() const;
};

struct DistributionClass {
  enum class Variant { GaussianFamily, ParameterNetworkFamily, DiscreteRecordFamily };
  Variant variant = Variant::GaussianFamily;
  std::vector<MultivariateGaussian> gaussians;
  std::vector<ParameterFamily> parameter_families;
  std::vector<BinaryDependenceModel> record_models;

  std::size_t member_count() const;
  void validate() const;
};

struct PufferfishFramework {
  std::vector<SecretSpec> secrets;
  std::set<std::size_t> sensitive;  // the index set C
  DistributionClass theta;

  PrivacyNotion notion() const;
  void validate(std::size_t attribute_count) const;
};

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 0.0;

  void validate() const;
  // c = sqrt(2 ln(1.25/delta)); defined only for delta > 0.
  double gaussian_c() const;
};

}  // namespace attrpriv
