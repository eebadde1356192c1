#include "attrpriv/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "attrpriv/errors.hpp"

namespace attrpriv {

std::size_t Factor::table_size() const {
  std::size_t s = 1;
  for (std::size_t c : card) s *= c;
  return s;
}

double Factor::at(const std::vector<std::size_t>& assignment) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < vars.size(); ++k) idx = idx * card[k] + assignment[k];
  return values[idx];
}

namespace {

// Advances a mixed-radix counter; returns false on wrap-around.
bool next_config(std::vector<std::size_t>& cfg,
                 const std::vector<std::size_t>& card) {
  for (std::size_t k = cfg.size(); k-- > 0;) {
    if (++cfg[k] < card[k]) return true;
    cfg[k] = 0;
  }
  return false;
}

}  // namespace

Factor factor_product(const Factor& a, const Factor& b) {
  Factor out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                 std::back_inserter(out.vars));
  out.card.resize(out.vars.size());
  for (std::size_t k = 0; k < out.vars.size(); ++k) {
    auto ia = std::lower_bound(a.vars.begin(), a.vars.end(), out.vars[k]);
    if (ia != a.vars.end() && *ia == out.vars[k]) {
      out.card[k] = a.card[ia - a.vars.begin()];
    } else {
      auto ib = std::lower_bound(b.vars.begin(), b.vars.end(), out.vars[k]);
      out.card[k] = b.card[ib - b.vars.begin()];
    }
  }
  std::vector<std::size_t> pos_a(a.vars.size()), pos_b(b.vars.size());
  for (std::size_t k = 0; k < a.vars.size(); ++k) {
    pos_a[k] = std::lower_bound(out.vars.begin(), out.vars.end(), a.vars[k]) -
               out.vars.begin();
  }
  for (std::size_t k = 0; k < b.vars.size(); ++k) {
    pos_b[k] = std::lower_bound(out.vars.begin(), out.vars.end(), b.vars[k]) -
               out.vars.begin();
  }
  out.values.resize(out.table_size());
  std::vector<std::size_t> cfg(out.vars.size(), 0);
  std::vector<std::size_t> cfg_a(a.vars.size()), cfg_b(b.vars.size());
  std::size_t idx = 0;
  do {
    for (std::size_t k = 0; k < a.vars.size(); ++k) cfg_a[k] = cfg[pos_a[k]];
    for (std::size_t k = 0; k < b.vars.size(); ++k) cfg_b[k] = cfg[pos_b[k]];
    out.values[idx++] = a.at(cfg_a) * b.at(cfg_b);
  } while (next_config(cfg, out.card));
  return out;
}

Factor factor_sum_out(const Factor& f, std::size_t var) {
  auto it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
  if (it == f.vars.end() || *it != var) return f;
  std::size_t pos = it - f.vars.begin();
  Factor out;
  out.vars = f.vars;
  out.vars.erase(out.vars.begin() + pos);
  out.card = f.card;
  out.card.erase(out.card.begin() + pos);
  out.values.assign(out.table_size(), 0.0);
  std::vector<std::size_t> cfg(f.vars.size(), 0);
  std::size_t idx = 0;
  do {
    std::size_t oidx = 0;
    for (std::size_t k = 0; k < f.vars.size(); ++k) {
      if (k == pos) continue;
      oidx = oidx * f.card[k] + cfg[k];
    }
    out.values[oidx] += f.values[idx++];
  } while (next_config(cfg, f.card));
  return out;
}

BayesNet::BayesNet(std::vector<BayesNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("config.bayesnet", "empty network");
  children_.resize(nodes_.size());
  std::vector<std::size_t> indeg(nodes_.size(), 0);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const auto& nd = nodes_[k];
    if (nd.support.empty()) {
      throw ConfigError("config.bayesnet", "node '" + nd.id + "' has empty support");
    }
    std::size_t rows = 1;
    for (std::size_t p : nd.parents) {
      if (p >= nodes_.size() || p == k) {
        throw ConfigError("config.bayesnet", "bad parent index for '" + nd.id + "'");
      }
      children_[p].push_back(k);
      rows *= nodes_[p].support.size();
      ++indeg[k];
    }
    if (nd.cpt.size() != rows * nd.support.size()) {
      throw ConfigError("config.bayesnet",
                        "CPT of '" + nd.id + "' has wrong dimensions");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (std::size_t v = 0; v < nd.support.size(); ++v) {
        double q = nd.cpt[r * nd.support.size() + v];
        if (q < 0.0) {
          throw ConfigError("config.bayesnet", "negative CPT entry in '" + nd.id + "'");
        }
        sum += q;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("config.bayesnet",
                          "CPT row of '" + nd.id + "' does not sum to 1");
      }
    }
  }
  // Kahn's algorithm doubles as the acyclicity check.
  std::deque<std::size_t> ready;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (indeg[k] == 0) ready.push_back(k);
  }
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    topo_.push_back(v);
    for (std::size_t c : children_[v]) {
      if (--indeg[c] == 0) ready.push_back(c);
    }
  }
  if (topo_.size() != nodes_.size()) {
    throw ConfigError("config.bayesnet", "network graph has a cycle");
  }
}

std::size_t BayesNet::index_of(const std::string& id) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].id == id) return k;
  }
  throw ConfigError("config.bayesnet", "unknown node '" + id + "'");
}

namespace {

Factor node_factor(const BayesNet& net, std::size_t k) {
  const auto& nd = net.node(k);
  Factor f;
  f.vars = nd.parents;
  f.vars.push_back(k);
  std::sort(f.vars.begin(), f.vars.end());
  f.card.resize(f.vars.size());
  for (std::size_t j = 0; j < f.vars.size(); ++j) {
    f.card[j] = net.node(f.vars[j]).support.size();
  }
  f.values.resize(f.table_size());
  // CPT is parent-config-major with parents in declared order; re-index into
  // the sorted-variable layout.
  std::vector<std::size_t> cfg(f.vars.size(), 0);
  std::size_t idx = 0;
  do {
    std::size_t row = 0;
    for (std::size_t p : nd.parents) {
      std::size_t pos = std::lower_bound(f.vars.begin(), f.vars.end(), p) -
                        f.vars.begin();
      row = row * net.node(p).support.size() + cfg[pos];
    }
    std::size_t self_pos =
        std::lower_bound(f.vars.begin(), f.vars.end(), k) - f.vars.begin();
    f.values[idx++] = nd.cpt[row * nd.support.size() + cfg[self_pos]];
  } while (next_config(cfg, f.card));
  return f;
}

}  // namespace

Factor BayesNet::marginal(const std::vector<std::size_t>& keep) const {
  std::set<std::size_t> keep_set(keep.begin(), keep.end());
  for (std::size_t v : keep_set) {
    if (v >= size()) throw ConfigError("config.bayesnet", "marginal var out of range");
  }
  std::vector<Factor> factors;
  factors.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) factors.push_back(node_factor(*this, k));
  for (std::size_t v = 0; v < size(); ++v) {
    if (keep_set.count(v)) continue;
    Factor merged;
    bool have = false;
    std::vector<Factor> rest;
    for (auto& f : factors) {
      if (std::binary_search(f.vars.begin(), f.vars.end(), v)) {
        merged = have ? factor_product(merged, f) : std::move(f);
        have = true;
      } else {
        rest.push_back(std::move(f));
      }
    }
    if (have) rest.push_back(factor_sum_out(merged, v));
    factors = std::move(rest);
  }
  Factor result;
  bool have = false;
  for (auto& f : factors) {
    result = have ? factor_product(result, f) : std::move(f);
    have = true;
  }
  if (!have || result.vars.size() != keep_set.size()) {
    // Variables with no remaining factor (possible only for empty keep).
    if (keep_set.empty()) {
      result.vars.clear();
      result.card.clear();
      result.values = {1.0};
      return result;
    }
    throw ConfigError("config.bayesnet", "marginal computation failed");
  }
  return result;
}

Factor BayesNet::full_joint() const {
  Factor f;
  f.vars.resize(size());
  std::iota(f.vars.begin(), f.vars.end(), 0);
  f.card.resize(size());
  for (std::size_t k = 0; k < size(); ++k) f.card[k] = nodes_[k].support.size();
  f.values.resize(f.table_size());
  std::vector<std::size_t> cfg(size(), 0);
  std::size_t idx = 0;
  do {
    double p = 1.0;
    for (std::size_t k = 0; k < size(); ++k) {
      const auto& nd = nodes_[k];
      std::size_t row = 0;
      for (std::size_t par : nd.parents) row = row * nodes_[par].support.size() + cfg[par];
      p *= nd.cpt[row * nd.support.size() + cfg[k]];
    }
    f.values[idx++] = p;
  } while (next_config(cfg, f.card));
  return f;
}

bool BayesNet::same_structure(const BayesNet& other) const {
  if (size() != other.size()) return false;
  for (std::size_t k = 0; k < size(); ++k) {
    if (nodes_[k].id != other.nodes_[k].id ||
        nodes_[k].support.size() != other.nodes_[k].support.size() ||
        nodes_[k].parents != other.nodes_[k].parents) {
      return false;
    }
  }
  return true;
}

std::set<std::size_t> d_connected_set(const BayesNet& net, std::size_t source,
                                      const std::set<std::size_t>& given) {
  if (source >= net.size()) {
    throw ConfigError("config.bayesnet", "node index out of range");
  }
  for (std::size_t q : given) {
    if (q >= net.size()) throw ConfigError("config.bayesnet", "node index out of range");
  }
  // Ancestors of the conditioning set (inclusive), for collider activation.
  std::set<std::size_t> anc(given.begin(), given.end());
  std::deque<std::size_t> work(given.begin(), given.end());
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop_front();
    for (std::size_t p : net.node(v).parents) {
      if (anc.insert(p).second) work.push_back(p);
    }
  }
  // Bayes-ball: states are (node, direction of arrival). kUp means the
  // trail arrived from a child, kDown from a parent.
  enum Dir { kUp = 0, kDown = 1 };
  std::vector<std::array<bool, 2>> visited(net.size(), {false, false});
  std::set<std::size_t> reachable;
  std::deque<std::pair<std::size_t, Dir>> queue;
  queue.emplace_back(source, kUp);
  while (!queue.empty()) {
    auto [v, dir] = queue.front();
    queue.pop_front();
    if (visited[v][dir]) continue;
    visited[v][dir] = true;
    bool observed = given.count(v) > 0;
    if (!observed) reachable.insert(v);
    if (dir == kUp) {
      if (!observed) {
        for (std::size_t p : net.node(v).parents) queue.emplace_back(p, kUp);
        for (std::size_t c : net.children(v)) queue.emplace_back(c, kDown);
      }
    } else {
      if (!observed) {
        for (std::size_t c : net.children(v)) queue.emplace_back(c, kDown);
      }
      if (anc.count(v)) {
        for (std::size_t p : net.node(v).parents) queue.emplace_back(p, kUp);
      }
    }
  }
  return reachable;
}

bool d_separated(const BayesNet& net, std::size_t source,
                 const std::set<std::size_t>& remote,
                 const std::set<std::size_t>& given) {
  if (given.count(source) || remote.count(source)) {
    throw ConfigError("config.bayesnet",
                      "source node may not appear in the conditioning or remote set");
  }
  for (std::size_t r : remote) {
    if (given.count(r)) {
      throw ConfigError("config.bayesnet", "remote and conditioning sets overlap");
    }
  }
  auto reachable = d_connected_set(net, source, given);
  for (std::size_t r : remote) {
    if (reachable.count(r)) return false;
  }
  return true;
}

void ParameterFamily::validate() const {
  if (likelihoods.empty()) return;  // optional; only output-distribution paths need them
  if (likelihoods.size() != net.size()) {
    throw ConfigError("config.parameter_family",
                      "one likelihood table required per parameter node");
  }
  for (std::size_t k = 0; k < net.size(); ++k) {
    const auto& lik = likelihoods[k];
    if (lik.rows.size() != net.node(k).support.size()) {
      throw ConfigError("config.parameter_family",
                        "likelihood of '" + net.node(k).id +
                            "' needs one row per parameter value");
    }
    for (const auto& row : lik.rows) {
      if (row.size() != lik.outcomes.size()) {
        throw ConfigError("config.parameter_family", "likelihood row width mismatch");
      }
      double sum = 0.0;
      for (double q : row) {
        if (q < 0.0) {
          throw ConfigError("config.parameter_family", "negative likelihood entry");
        }
        sum += q;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("config.parameter_family",
                          "likelihood row does not sum to 1");
      }
    }
  }
}

}  // namespace attrpriv
