#include "attrpriv/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "attrpriv/errors.hpp"
#include "attrpriv/rng.hpp"

namespace attrpriv {

double w_infinity(const DiscreteDistribution& mu,
                  const DiscreteDistribution& nu) {
  constexpr double kTol = 1e-12;
  std::size_t i = 0, j = 0;
  double ai = mu.probs()[0], bj = nu.probs()[0];
  double best = 0.0;
  while (i < mu.size() && j < nu.size()) {
    if (ai <= kTol) {
      if (++i < mu.size()) ai = mu.probs()[i];
      continue;
    }
    if (bj <= kTol) {
      if (++j < nu.size()) bj = nu.probs()[j];
      continue;
    }
    best = std::max(best, std::abs(mu.points()[i] - nu.points()[j]));
    double m = std::min(ai, bj);
    ai -= m;
    bj -= m;
  }
  return best;
}

DiscreteDistribution conditional_count_distribution(
    const BinaryDependenceModel& model, std::size_t a) {
  model.validate();
  if (a > model.n) {
    throw ConfigError("config.mechanism",
                      "secret value exceeds the record count");
  }
  int n = static_cast<int>(model.n);
  int ia = static_cast<int>(a);
  if (ia == 0) return binomial_distribution(n, model.p2);
  if (ia == n) return binomial_distribution(n, model.p1);
  return convolve(binomial_distribution(ia, model.p1),
                  binomial_distribution(n - ia, model.p2));
}

DiscreteDistribution conditional_count_distribution_param(std::size_t n,
                                                          double phi2,
                                                          double alpha,
                                                          double beta) {
  double phi1 = alpha + beta * phi2;
  if (!(phi1 >= 0.0 && phi1 <= 1.0)) {
    throw ConfigError("config.mechanism",
                      "mapped parameter phi_1 lies outside [0,1]");
  }
  return binomial_distribution(static_cast<int>(n), phi1);
}

namespace {

// Distribution of the query value over n i.i.d. records whose per-attribute
// laws are fixed by one parameter configuration.
DiscreteDistribution query_distribution_for_config(
    const QuerySpec& query, const ParameterFamily& family, const Dataset& data,
    const std::vector<std::size_t>& attr_nodes,
    const std::vector<std::size_t>& node_values) {
  std::size_t n = data.record_count();
  auto value_index = [&](std::size_t node) {
    for (std::size_t k = 0; k < attr_nodes.size(); ++k) {
      if (attr_nodes[k] == node) return node_values[k];
    }
    throw ConfigError("config.mechanism", "internal: node not in configuration");
  };
  if (query.kind == QuerySpec::Kind::ThresholdCount) {
    double success = 1.0;
    for (const auto& pred : query.predicates) {
      std::size_t node = family.net.index_of(data.names()[pred.attribute]);
      const auto& lik = family.likelihoods[node];
      const auto& row = lik.rows[value_index(node)];
      double p = 0.0;
      for (std::size_t o = 0; o < lik.outcomes.size(); ++o) {
        if (pred.holds(lik.outcomes[o])) p += row[o];
      }
      success *= p;
    }
    return binomial_distribution(static_cast<int>(n), success);
  }
  std::size_t node = family.net.index_of(data.names()[query.attribute]);
  const auto& lik = family.likelihoods[node];
  const auto& row = lik.rows[value_index(node)];
  DiscreteDistribution per_record =
      DiscreteDistribution::from_atoms([&] {
        std::vector<std::pair<double, double>> atoms;
        for (std::size_t o = 0; o < lik.outcomes.size(); ++o) {
          atoms.emplace_back(lik.outcomes[o], row[o]);
        }
        return atoms;
      }());
  DiscreteDistribution sum = per_record;
  for (std::size_t r = 1; r < n; ++r) sum = convolve(sum, per_record);
  if (query.kind == QuerySpec::Kind::ColumnMean) {
    return affine_image(sum, 1.0 / static_cast<double>(n), 0.0);
  }
  return sum;
}

// Conditional distribution of F(X) given phi_i in the event, under one
// parameter family. Returns nullopt when the event has zero probability.
std::optional<DiscreteDistribution> conditional_output_distribution(
    const QuerySpec& query, const ParameterFamily& family, const Dataset& data,
    std::size_t secret_node, const SecretEvent& event) {
  if (family.likelihoods.empty()) {
    throw ConfigError("config.mechanism",
                      "wasserstein over a parameter-network family requires "
                      "per-attribute likelihood tables");
  }
  std::set<std::size_t> attr_node_set;
  for (std::size_t j : query.read_set()) {
    attr_node_set.insert(family.net.index_of(data.names()[j]));
  }
  std::vector<std::size_t> keep(attr_node_set.begin(), attr_node_set.end());
  if (!attr_node_set.count(secret_node)) keep.push_back(secret_node);
  std::sort(keep.begin(), keep.end());
  Factor f = family.net.marginal(keep);

  const auto& secret_support = family.net.node(secret_node).support;
  auto in_event = [&](std::size_t v) { return event.contains(secret_support[v]); };
  std::size_t pos_i =
      std::lower_bound(f.vars.begin(), f.vars.end(), secret_node) - f.vars.begin();

  // Collect P(attr config, phi_i in event) by walking the factor table.
  std::map<std::vector<std::size_t>, double> config_mass;
  double event_mass = 0.0;
  std::vector<std::size_t> cfg(f.vars.size(), 0);
  std::size_t idx = 0;
  bool more = true;
  while (more) {
    if (in_event(cfg[pos_i])) {
      std::vector<std::size_t> attr_cfg;
      for (std::size_t k = 0; k < f.vars.size(); ++k) {
        if (attr_node_set.count(f.vars[k])) attr_cfg.push_back(cfg[k]);
      }
      config_mass[attr_cfg] += f.values[idx];
      event_mass += f.values[idx];
    }
    ++idx;
    more = false;
    for (std::size_t k = cfg.size(); k-- > 0;) {
      if (++cfg[k] < f.card[k]) {
        more = true;
        break;
      }
      cfg[k] = 0;
    }
  }
  if (event_mass <= 0.0) return std::nullopt;

  std::vector<std::size_t> attr_nodes;
  for (std::size_t k = 0; k < f.vars.size(); ++k) {
    if (attr_node_set.count(f.vars[k])) attr_nodes.push_back(f.vars[k]);
  }
  std::vector<DiscreteDistribution> parts;
  std::vector<double> weights;
  for (const auto& [attr_cfg, mass] : config_mass) {
    if (mass <= 0.0) continue;
    parts.push_back(query_distribution_for_config(query, family, data,
                                                  attr_nodes, attr_cfg));
    weights.push_back(mass / event_mass);
  }
  return mixture(parts, weights);
}

}  // namespace

WassersteinReport wasserstein_mechanism(const Dataset& data,
                                        const QuerySpec& query,
                                        const PufferfishFramework& framework,
                                        double epsilon, std::uint64_t seed) {
  framework.validate(data.attribute_count());
  if (!(epsilon > 0.0)) {
    throw ConfigError("config.params", "epsilon must be positive");
  }
  const auto variant = framework.theta.variant;
  if (variant == DistributionClass::Variant::GaussianFamily) {
    throw ConfigError("config.mechanism",
                      "no computable conditional output distribution for a "
                      "continuous Gaussian family");
  }
  WassersteinReport report;
  report.seed = seed;
  bool any_pair = false;
  for (const auto& secret : framework.secrets) {
    for (std::size_t a = 0; a < secret.events.size(); ++a) {
      for (std::size_t b = a + 1; b < secret.events.size(); ++b) {
        std::size_t theta_count = framework.theta.member_count();
        for (std::size_t t = 0; t < theta_count; ++t) {
          std::optional<DiscreteDistribution> mu, nu;
          if (variant == DistributionClass::Variant::DiscreteRecordFamily) {
            const auto& model = framework.theta.record_models[t];
            if (query.kind != QuerySpec::Kind::ColumnSum ||
                secret.g != SecretFunction::ColumnSum) {
              throw ConfigError("config.mechanism",
                                "the binary record family supports column-sum "
                                "queries and column-sum secrets");
            }
            auto single_value = [&](const SecretEvent& e) -> std::size_t {
              if (e.kind != SecretEvent::Kind::Points || e.points.size() != 1) {
                throw ConfigError(
                    "config.mechanism",
                    "record-family secret events must be single count values");
              }
              double v = e.points.front();
              if (v < 0 || v != std::floor(v)) {
                throw ConfigError("config.mechanism",
                                  "secret count must be a nonnegative integer");
              }
              return static_cast<std::size_t>(v);
            };
            mu = conditional_count_distribution(model, single_value(secret.events[a]));
            nu = conditional_count_distribution(model, single_value(secret.events[b]));
          } else {
            const auto& family = framework.theta.parameter_families[t];
            std::size_t node =
                family.net.index_of(data.names()[secret.attribute]);
            mu = conditional_output_distribution(query, family, data, node,
                                                 secret.events[a]);
            nu = conditional_output_distribution(query, family, data, node,
                                                 secret.events[b]);
          }
          if (!mu || !nu) continue;  // P(s|theta) = 0: skip this pair
          any_pair = true;
          double d = w_infinity(*mu, *nu);
          report.per_pair.push_back({secret.attribute, a, b, t, d});
          report.w = std::max(report.w, d);
        }
      }
    }
  }
  if (!any_pair) {
    throw ConfigError("config.mechanism",
                      "all secret pairs have zero probability under theta");
  }
  report.scale = report.w / epsilon;
  double exact = evaluate_query(query, data);
  Rng rng = Rng::for_stream(seed, "wasserstein");
  report.noise = report.scale > 0.0 ? rng.next_laplace(report.scale) : 0.0;
  report.output = exact + report.noise;
  return report;
}

}  // namespace attrpriv
