#pragma once

#include <cstdint>
#include <optional>

#include "attrpriv/bayesnet.hpp"
#include "attrpriv/framework.hpp"

namespace attrpriv {

// Partition (Q, N, R) of the network nodes for a protected node i: deleting
// Q separates the near set N (containing i) from the remote set R, with
// d-separation of i and R given Q.
struct MarkovQuilt {
  std::size_t protected_node = 0;
  std::set<std::size_t> quilt;   // Q
  std::set<std::size_t> near;    // N, contains i
  std::set<std::size_t> remote;  // R, nonempty
};

// All quilts of node i with |Q| <= max_quilt_size and nonempty R. N is the
// d-connected closure of i given Q, which makes R maximal. Deterministic
// order: by |Q|, then lexicographically by Q's node indices.
std::vector<MarkovQuilt> enumerate_quilts(const BayesNet& net, std::size_t i,
                                          std::size_t max_quilt_size);

// Worst-case log-ratio sup_theta max_{a,b} max_{config of A}
// ln P(A-config | node i = a) / P(A-config | node i = b) over a shared-
// structure family of networks. Values of i with zero marginal probability
// under a theta are skipped for that theta; a configuration positive under
// one conditioning and zero under the other yields +infinity. Empty A
// gives 0.
double net_max_influence(const std::vector<BayesNet>& thetas, std::size_t i,
                         const std::set<std::size_t>& targets);

// Max-influence of parameter phi_i on the parameters phi_A (Section-5
// semantics, over parameter networks).
double max_influence(const std::vector<ParameterFamily>& thetas, std::size_t i,
                     const std::set<std::size_t>& targets);

// Appendix semantics: influence of a variable's value on other variables'
// values, over value-level networks.
double variable_max_influence(const std::vector<BayesNet>& thetas,
                              std::size_t i, const std::set<std::size_t>& targets);

struct QuiltChoice {
  std::optional<MarkovQuilt> quilt;  // nullopt: the Delta_A F / eps fallback
  double influence = 0.0;
  double scale = 0.0;  // b_i
};

struct QuiltReport {
  std::string mechanism = "apmqm";
  std::map<std::size_t, QuiltChoice> per_attribute;
  double scale = 0.0;  // Laplace scale max_i b_i
  double noise = 0.0;
  double output = 0.0;
  std::uint64_t seed = 0;
};

// Attribute-Private Markov Quilt Mechanism: for each sensitive attribute,
// b_i starts at Delta_A F / eps and is lowered to
// Delta_{A cap N} F / (eps - e) over admissible quilts (influence e < eps);
// the release adds Laplace(max_i b_i) noise.
QuiltReport apmqm(const Dataset& data, const QuerySpec& query,
                  const PufferfishFramework& framework, double epsilon,
                  std::size_t max_quilt_size, std::uint64_t seed);

// Baseline Markov Quilt Mechanism over a value-level network: per node,
// b_i = min over admissible quilts of |N| / (eps - e^v); the release adds
// Laplace(L * max_i b_i) noise to the L-Lipschitz query value. Throws when
// some node has no admissible quilt.
QuiltReport baseline_mqm(const Dataset& data, const QuerySpec& query,
                         double lipschitz, const std::vector<BayesNet>& thetas,
                         double epsilon, std::size_t max_quilt_size,
                         std::uint64_t seed);

}  // namespace attrpriv
