#include "attrpriv/framework.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>

#include "attrpriv/errors.hpp"

namespace attrpriv {

void MultivariateGaussian::validate() const {
  const std::size_t m = mu.size();
  if (m == 0 || cov.size() != m) {
    throw ConfigError("config.gaussian", "mean/covariance dimension mismatch");
  }
  Eigen::MatrixXd v(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (cov[i].size() != m) {
      throw ConfigError("config.gaussian", "covariance matrix is not square");
    }
    for (std::size_t j = 0; j < m; ++j) v(i, j) = cov[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(cov[i][i] > 0.0)) {
      throw ConfigError("config.gaussian", "diagonal variances must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(cov[i][j] - cov[j][i]) > 1e-12) {
        throw ConfigError("config.gaussian", "covariance matrix is not symmetric");
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw ConfigError("config.gaussian",
                      "covariance matrix is not positive semidefinite");
  }
}

void BinaryDependenceModel::validate() const {
  if (n < 1 || p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0) {
    throw ConfigError("config.record_model",
                      "requires n >= 1 and p1, p2 in [0,1]");
  }
}

bool SecretEvent::contains(double x) const {
  if (kind == Kind::Interval) return x >= lo && x <= hi;
  return std::find(points.begin(), points.end(), x) != points.end();
}

bool SecretEvent::overlaps(const SecretEvent& other) const {
  if (kind == Kind::Interval && other.kind == Kind::Interval) {
    return lo <= other.hi && other.lo <= hi;
  }
  const SecretEvent& pts = (kind == Kind::Points) ? *this : other;
  const SecretEvent& any = (kind == Kind::Points) ? other : *this;
  for (double x : pts.points) {
    if (any.contains(x)) return true;
  }
  return false;
}

void SecretSpec::validate() const {
  if (events.size() < 2) {
    throw ConfigError("config.secret",
                      "at least 2 events are required to form a secret pair");
  }
  for (std::size_t a = 0; a < events.size(); ++a) {
    const auto& e = events[a];
    if (e.kind == SecretEvent::Kind::Interval) {
      if (!(e.lo <= e.hi)) {
        throw ConfigError("config.secret", "event interval has lo > hi");
      }
    } else if (e.points.empty()) {
      throw ConfigError("config.secret", "event point set is empty");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (e.overlaps(events[b])) {
        throw ConfigError("config.secret", "secret events must be pairwise disjoint");
      }
    }
  }
}

double SecretSpec::event_union_diameter() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& e : events) {
    if (e.kind == SecretEvent::Kind::Interval) {
      lo = std::min(lo, e.lo);
      hi = std::max(hi, e.hi);
    } else {
      for (double x : e.points) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError("config.secret", "secret event union is unbounded");
  }
  return hi - lo;
}

std::size_t DistributionClass::member_count() const {
  switch (variant) {
    case Variant::GaussianFamily: return gaussians.size();
    case Variant::ParameterNetworkFamily: return parameter_families.size();
    case Variant::DiscreteRecordFamily: return record_models.size();
  }
  return 0;
}

void DistributionClass::validate() const {
  if (member_count() == 0) {
    throw ConfigError("config.theta", "distribution class must be nonempty");
  }
  switch (variant) {
    case Variant::GaussianFamily: {
      std::size_t m = gaussians.front().dim();
      for (const auto& g : gaussians) {
        g.validate();
        if (g.dim() != m) {
          throw ConfigError("config.theta", "members must agree on dimension");
        }
      }
      break;
    }
    case Variant::ParameterNetworkFamily: {
      const auto& first = parameter_families.front();
      for (const auto& pf : parameter_families) {
        pf.validate();
        if (!pf.net.same_structure(first.net)) {
          throw ConfigError("config.theta",
                            "parameter families must share one network structure");
        }
      }
      break;
    }
    case Variant::DiscreteRecordFamily: {
      std::size_t n = record_models.front().n;
      for (const auto& rm : record_models) {
        rm.validate();
        if (rm.n != n) {
          throw ConfigError("config.theta", "members must agree on record count");
        }
      }
      break;
    }
  }
}

PrivacyNotion PufferfishFramework::notion() const {
  if (secrets.empty()) {
    throw ConfigError("config.framework", "no secrets declared");
  }
  return secrets.front().notion;
}

void PufferfishFramework::validate(std::size_t attribute_count) const {
  if (secrets.empty()) {
    throw ConfigError("config.framework", "no secrets declared");
  }
  theta.validate();
  PrivacyNotion shared = secrets.front().notion;
  for (const auto& s : secrets) {
    s.validate();
    if (s.notion != shared) {
      throw ConfigError("config.framework", "all secrets must share one notion");
    }
    if (s.attribute >= attribute_count) {
      throw ConfigError("config.framework", "secret attribute index out of range");
    }
    if (!sensitive.count(s.attribute)) {
      throw ConfigError("config.framework",
                        "secret attribute is not in the sensitive set C");
    }
  }
  if (shared == PrivacyNotion::Distributional &&
      theta.variant != DistributionClass::Variant::ParameterNetworkFamily) {
    throw ConfigError("config.framework",
                      "distributional secrets require a parameter-network family");
  }
}

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0)) {
    throw ConfigError("config.params", "epsilon must be positive");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw ConfigError("config.params", "delta must lie in [0,1)");
  }
}

double PrivacyParams::gaussian_c() const {
  if (!(delta > 0.0)) {
    throw ConfigError("config.params", "Gaussian mechanism requires delta > 0");
  }
  return std::sqrt(2.0 * std::log(1.25 / delta));
}

}  // namespace attrpriv
