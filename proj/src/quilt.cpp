#include "attrpriv/quilt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "attrpriv/errors.hpp"
#include "attrpriv/rng.hpp"

namespace attrpriv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<MarkovQuilt> enumerate_quilts(const BayesNet& net, std::size_t i,
                                          std::size_t max_quilt_size) {
  if (i >= net.size()) {
    throw ConfigError("config.bayesnet", "protected node out of range");
  }
  if (max_quilt_size > net.size() - 1) max_quilt_size = net.size() - 1;
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (v != i) others.push_back(v);
  }
  std::vector<MarkovQuilt> result;
  std::vector<std::size_t> pick;
  // Candidate sets in lexicographic order within each size.
  auto emit = [&](const std::set<std::size_t>& quilt_set) {
    auto near = d_connected_set(net, i, quilt_set);
    std::set<std::size_t> remote;
    for (std::size_t v = 0; v < net.size(); ++v) {
      if (v != i && !quilt_set.count(v) && !near.count(v)) remote.insert(v);
    }
    if (remote.empty()) return;
    MarkovQuilt q;
    q.protected_node = i;
    q.quilt = quilt_set;
    q.near = std::move(near);
    q.remote = std::move(remote);
    result.push_back(std::move(q));
  };
  std::function<void(std::size_t, std::size_t)> choose =
      [&](std::size_t start, std::size_t remaining) {
        if (remaining == 0) {
          emit(std::set<std::size_t>(pick.begin(), pick.end()));
          return;
        }
        for (std::size_t k = start; k + remaining <= others.size(); ++k) {
          pick.push_back(others[k]);
          choose(k + 1, remaining - 1);
          pick.pop_back();
        }
      };
  for (std::size_t size = 0; size <= max_quilt_size; ++size) {
    choose(0, size);
  }
  return result;
}

double net_max_influence(const std::vector<BayesNet>& thetas, std::size_t i,
                         const std::set<std::size_t>& targets) {
  if (thetas.empty()) {
    throw ConfigError("config.theta", "empty distribution class");
  }
  if (targets.count(i)) {
    throw ConfigError("config.bayesnet",
                      "influence target set may not contain the protected node");
  }
  if (targets.empty()) return 0.0;
  double best = 0.0;
  bool any_pair = false;
  for (const auto& net : thetas) {
    std::vector<std::size_t> keep(targets.begin(), targets.end());
    keep.push_back(i);
    std::sort(keep.begin(), keep.end());
    Factor f = net.marginal(keep);
    std::size_t pos_i =
        std::lower_bound(f.vars.begin(), f.vars.end(), i) - f.vars.begin();
    std::size_t card_i = f.card[pos_i];
    std::size_t rest = f.values.size() / card_i;
    // Group the table by the value of node i: cond[a][t] over target configs.
    std::vector<std::vector<double>> cond(card_i, std::vector<double>(rest));
    std::vector<double> marginal(card_i, 0.0);
    std::vector<std::size_t> cfg(f.vars.size(), 0);
    std::size_t idx = 0;
    do {
      std::size_t tcfg = 0;
      for (std::size_t k = 0; k < f.vars.size(); ++k) {
        if (k == pos_i) continue;
        tcfg = tcfg * f.card[k] + cfg[k];
      }
      cond[cfg[pos_i]][tcfg] = f.values[idx];
      marginal[cfg[pos_i]] += f.values[idx];
      ++idx;
      // mixed-radix increment
      std::size_t k = cfg.size();
      bool carried = true;
      while (k-- > 0) {
        if (++cfg[k] < f.card[k]) {
          carried = false;
          break;
        }
        cfg[k] = 0;
      }
      if (carried) break;
    } while (true);
    for (std::size_t a = 0; a < card_i; ++a) {
      if (marginal[a] <= 0.0) continue;  // zero-probability secret value
      for (std::size_t b = 0; b < card_i; ++b) {
        if (b == a || marginal[b] <= 0.0) continue;
        any_pair = true;
        for (std::size_t t = 0; t < rest; ++t) {
          double pa = cond[a][t] / marginal[a];
          double pb = cond[b][t] / marginal[b];
          if (pa <= 0.0) continue;
          if (pb <= 0.0) return kInf;
          best = std::max(best, std::log(pa / pb));
        }
      }
    }
  }
  if (!any_pair) {
    throw ConfigError("config.secret",
                      "vacuous secret: fewer than two positive-probability values");
  }
  return best;
}

double max_influence(const std::vector<ParameterFamily>& thetas, std::size_t i,
                     const std::set<std::size_t>& targets) {
  std::vector<BayesNet> nets;
  nets.reserve(thetas.size());
  for (const auto& pf : thetas) nets.push_back(pf.net);
  return net_max_influence(nets, i, targets);
}

double variable_max_influence(const std::vector<BayesNet>& thetas,
                              std::size_t i,
                              const std::set<std::size_t>& targets) {
  return net_max_influence(thetas, i, targets);
}

QuiltReport apmqm(const Dataset& data, const QuerySpec& query,
                  const PufferfishFramework& framework, double epsilon,
                  std::size_t max_quilt_size, std::uint64_t seed) {
  framework.validate(data.attribute_count());
  if (!(epsilon > 0.0)) {
    throw ConfigError("config.params", "epsilon must be positive");
  }
  if (framework.notion() != PrivacyNotion::Distributional ||
      framework.theta.variant != DistributionClass::Variant::ParameterNetworkFamily) {
    throw ConfigError("config.mechanism",
                      "apmqm requires distributional secrets over a "
                      "parameter-network family");
  }
  if (framework.sensitive.empty()) {
    throw ConfigError("config.framework", "sensitive attribute set C is empty");
  }
  std::vector<BayesNet> nets;
  for (const auto& pf : framework.theta.parameter_families) nets.push_back(pf.net);
  const BayesNet& net = nets.front();

  auto query_attrs = query.read_set();
  double delta_a = column_sensitivity(query, query_attrs, data.record_count(),
                                      data.domains());
  // Attribute j's parameter node, matched by name.
  auto node_of = [&](std::size_t j) { return net.index_of(data.names()[j]); };

  QuiltReport report;
  report.seed = seed;
  double worst_scale = 0.0;
  for (std::size_t attr : framework.sensitive) {
    std::size_t node_i = node_of(attr);
    QuiltChoice choice;
    choice.scale = delta_a / epsilon;
    for (const auto& quilt : enumerate_quilts(net, node_i, max_quilt_size)) {
      double infl = net_max_influence(nets, node_i, quilt.quilt);
      if (!(infl < epsilon)) continue;
      std::set<std::size_t> near_attrs;
      for (std::size_t j : query_attrs) {
        if (quilt.near.count(node_of(j))) near_attrs.insert(j);
      }
      double delta_an = column_sensitivity(query, near_attrs,
                                           data.record_count(), data.domains());
      double candidate = delta_an / (epsilon - infl);
      if (candidate <= choice.scale) {
        choice.scale = candidate;
        choice.influence = infl;
        choice.quilt = quilt;
      }
    }
    worst_scale = std::max(worst_scale, choice.scale);
    report.per_attribute[attr] = std::move(choice);
  }
  report.scale = worst_scale;
  double exact = evaluate_query(query, data);
  Rng rng = Rng::for_stream(seed, "apmqm");
  report.noise = report.scale > 0.0 ? rng.next_laplace(report.scale) : 0.0;
  report.output = exact + report.noise;
  return report;
}

QuiltReport baseline_mqm(const Dataset& data, const QuerySpec& query,
                         double lipschitz, const std::vector<BayesNet>& thetas,
                         double epsilon, std::size_t max_quilt_size,
                         std::uint64_t seed) {
  if (!(epsilon > 0.0)) {
    throw ConfigError("config.params", "epsilon must be positive");
  }
  if (lipschitz < 0.0) {
    throw ConfigError("config.params", "Lipschitz constant must be nonnegative");
  }
  if (thetas.empty()) {
    throw ConfigError("config.theta", "empty distribution class");
  }
  for (const auto& net : thetas) {
    if (!net.same_structure(thetas.front())) {
      throw ConfigError("config.theta", "networks must share one structure");
    }
  }
  const BayesNet& net = thetas.front();
  QuiltReport report;
  report.mechanism = "mqm-baseline";
  report.seed = seed;
  double b_max = 0.0;
  for (std::size_t node = 0; node < net.size(); ++node) {
    QuiltChoice choice;
    choice.scale = kInf;
    for (const auto& quilt : enumerate_quilts(net, node, max_quilt_size)) {
      double infl = net_max_influence(thetas, node, quilt.quilt);
      if (!(infl < epsilon)) continue;  // b(Y_Q) = infinity
      double candidate =
          static_cast<double>(quilt.near.size()) / (epsilon - infl);
      if (candidate < choice.scale) {
        choice.scale = candidate;
        choice.influence = infl;
        choice.quilt = quilt;
      }
    }
    if (!std::isfinite(choice.scale)) {
      throw ConfigError("config.mechanism",
                        "no admissible Markov quilt for node '" +
                            net.node(node).id + "'");
    }
    b_max = std::max(b_max, choice.scale);
    report.per_attribute[node] = std::move(choice);
  }
  report.scale = lipschitz * b_max;
  double exact = evaluate_query(query, data);
  Rng rng = Rng::for_stream(seed, "mqm-baseline");
  report.noise = report.scale > 0.0 ? rng.next_laplace(report.scale) : 0.0;
  report.output = exact + report.noise;
  return report;
}

}  // namespace attrpriv
