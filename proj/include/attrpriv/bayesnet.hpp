#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace attrpriv {

// Factor over a sorted list of variable indices; values laid out with the
// last variable fastest.
struct Factor {
  std::vector<std::size_t> vars;
  std::vector<std::size_t> card;
  std::vector<double> values;

  std::size_t table_size() const;
  double at(const std::vector<std::size_t>& assignment) const;
};

Factor factor_product(const Factor& a, const Factor& b);
Factor factor_sum_out(const Factor& f, std::size_t var);

// One node of a discrete Bayesian network. `support` holds the node's
// values (real-valued labels). `cpt` is stored parent-configuration-major:
// one row per configuration of the parents (first parent slowest), each row
// a distribution over the node's support.
struct BayesNode {
  std::string id;
  std::vector<double> support;
  std::vector<std::size_t> parents;
  std::vector<double> cpt;
};

class BayesNet {
 public:
  explicit BayesNet(std::vector<BayesNode> nodes);

  std::size_t size() const { return nodes_.size(); }
  const BayesNode& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<BayesNode>& nodes() const { return nodes_; }
  std::size_t index_of(const std::string& id) const;
  const std::vector<std::size_t>& children(std::size_t k) const {
    return children_[k];
  }

  // Exact joint marginal over `keep`, computed by variable elimination.
  Factor marginal(const std::vector<std::size_t>& keep) const;

  // Full joint table over all nodes, by direct enumeration. Intended for
  // small nets and test oracles.
  Factor full_joint() const;

  bool same_structure(const BayesNet& other) const;

 private:
  std::vector<BayesNode> nodes_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> topo_;
};

// True iff every node of `remote` is d-separated from `source` given
// `given` (Bayes-ball reachability over active trails).
bool d_separated(const BayesNet& net, std::size_t source,
                 const std::set<std::size_t>& remote,
                 const std::set<std::size_t>& given);

// Nodes d-connected to `source` given `given` (excluding `given` itself;
// includes `source`).
std::set<std::size_t> d_connected_set(const BayesNet& net, std::size_t source,
                                      const std::set<std::size_t>& given);

// Per-attribute likelihood: a row-stochastic map from each value of the
// parameter node to a distribution over the attribute's domain values.
struct AttributeLikelihood {
  std::vector<double> outcomes;            // attribute domain values
  std::vector<std::vector<double>> rows;   // one row per parameter value
};

// One member theta of a parameter-network distribution class: a Bayesian
// network over the per-attribute parameters phi_1..phi_m plus the
// conditional law of each attribute given its parameter. Attribute columns
// are independent given the full parameter vector by construction.
struct ParameterFamily {
  BayesNet net;
  std::vector<AttributeLikelihood> likelihoods;  // one per attribute/node

  void validate() const;
};

}  // namespace attrpriv
