// Shared test utilities: a tiny deterministic generator for test instances
// and independent brute-force oracles the implementations are checked
// against.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "attrpriv/bayesnet.hpp"
#include "attrpriv/distribution.hpp"

namespace testutil {

// xorshift64* — deliberately unrelated to the library's splitmix generator.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545f4914f6cdd1dull;
  }
  double uniform() {  // in (0,1)
    return ((next() >> 11) + 0.5) * 0x1.0p-53;
  }
  // integer in [lo, hi]
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t s_;
};

// Random distribution on `size` strictly increasing integer-ish points.
inline attrpriv::DiscreteDistribution random_distribution(TestRng& rng,
                                                          int size,
                                                          bool allow_zeros = true) {
  std::vector<double> points(size), probs(size);
  double x = rng.uniform() * 4.0 - 2.0;
  double total = 0.0;
  for (int k = 0; k < size; ++k) {
    points[k] = x;
    x += 0.25 + rng.uniform();
    double w = rng.uniform();
    if (allow_zeros && rng.range(0, 4) == 0) w = 0.0;
    probs[k] = w;
    total += w;
  }
  if (total == 0.0) {
    probs[0] = 1.0;
    total = 1.0;
  }
  for (double& p : probs) p /= total;
  return attrpriv::DiscreteDistribution(points, probs);
}

// Brute-force infinity-Wasserstein: binary search over the candidate
// displacement thresholds; a threshold d is feasible iff a coupling
// supported on {|x - y| <= d} exists, which by the marriage condition holds
// iff every subset S of mu's atoms has nu-mass within reach of S at least
// mu(S). Supports of size <= ~16.
inline double bottleneck_w_infinity(const attrpriv::DiscreteDistribution& mu,
                                    const attrpriv::DiscreteDistribution& nu) {
  const auto& xs = mu.points();
  const auto& ys = nu.points();
  const auto& ps = mu.probs();
  const auto& qs = nu.probs();
  std::vector<double> candidates{0.0};
  for (double x : xs)
    for (double y : ys) candidates.push_back(std::abs(x - y));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  auto feasible = [&](double d) {
    const std::size_t n = xs.size();
    for (std::size_t mask = 1; mask < (1ull << n); ++mask) {
      double need = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1ull << i)) need += ps[i];
      double have = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        bool reachable = false;
        for (std::size_t i = 0; i < n && !reachable; ++i) {
          if ((mask & (1ull << i)) && std::abs(xs[i] - ys[j]) <= d + 1e-12) {
            reachable = true;
          }
        }
        if (reachable) have += qs[j];
      }
      if (have + 1e-12 < need) return false;
    }
    return true;
  };
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

// Exhaustive-subset max-divergence.
inline double subset_max_divergence(const attrpriv::DiscreteDistribution& p,
                                    const attrpriv::DiscreteDistribution& q) {
  const std::size_t n = p.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (1ull << n); ++mask) {
    double pm = 0.0, qm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1ull << k)) {
        pm += p.probs()[k];
        qm += q.probs()[k];
      }
    }
    if (pm <= 0.0) continue;
    if (qm <= 0.0) return std::numeric_limits<double>::infinity();
    best = std::max(best, std::log(pm / qm));
  }
  return best;
}

// Exhaustive-subset eta-approximate max-divergence.
inline double subset_approx_divergence(const attrpriv::DiscreteDistribution& p,
                                       const attrpriv::DiscreteDistribution& q,
                                       double eta) {
  const std::size_t n = p.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (1ull << n); ++mask) {
    double pm = 0.0, qm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1ull << k)) {
        pm += p.probs()[k];
        qm += q.probs()[k];
      }
    }
    if (pm < eta) continue;
    double num = pm - eta;
    if (num <= 0.0) continue;
    if (qm <= 0.0) return std::numeric_limits<double>::infinity();
    best = std::max(best, std::log(num / qm));
  }
  return best;
}

// Max-influence of node i on `targets` by direct enumeration of the full
// joint table.
inline double joint_table_influence(
    const std::vector<attrpriv::BayesNet>& thetas, std::size_t i,
    const std::set<std::size_t>& targets) {
  if (targets.empty()) return 0.0;
  double best = 0.0;
  bool any = false;
  for (const auto& net : thetas) {
    attrpriv::Factor joint = net.full_joint();
    std::size_t card_i = net.node(i).support.size();
    std::vector<double> marg(card_i, 0.0);
    // conditional mass per (value of i, target configuration)
    std::size_t tcard = 1;
    std::vector<std::size_t> tlist(targets.begin(), targets.end());
    for (std::size_t t : tlist) tcard *= net.node(t).support.size();
    std::vector<std::vector<double>> mass(card_i,
                                          std::vector<double>(tcard, 0.0));
    std::vector<std::size_t> cfg(net.size(), 0);
    std::size_t idx = 0;
    bool more = true;
    while (more) {
      std::size_t tcfg = 0;
      for (std::size_t t : tlist) tcfg = tcfg * net.node(t).support.size() + cfg[t];
      mass[cfg[i]][tcfg] += joint.values[idx];
      marg[cfg[i]] += joint.values[idx];
      ++idx;
      more = false;
      for (std::size_t k = cfg.size(); k-- > 0;) {
        if (++cfg[k] < net.node(k).support.size()) {
          more = true;
          break;
        }
        cfg[k] = 0;
      }
    }
    for (std::size_t a = 0; a < card_i; ++a) {
      if (marg[a] <= 0.0) continue;
      for (std::size_t b = 0; b < card_i; ++b) {
        if (a == b || marg[b] <= 0.0) continue;
        any = true;
        for (std::size_t t = 0; t < tcard; ++t) {
          double pa = mass[a][t] / marg[a];
          double pb = mass[b][t] / marg[b];
          if (pa <= 0.0) continue;
          if (pb <= 0.0) return std::numeric_limits<double>::infinity();
          best = std::max(best, std::log(pa / pb));
        }
      }
    }
  }
  (void)any;
  return best;
}

// Random small Bayesian network: DAG over `n` nodes (edges only from lower
// to higher index), supports of size 2..max_support, random CPTs.
inline attrpriv::BayesNet random_net(TestRng& rng, int n, int max_support,
                                     double edge_prob = 0.5) {
  std::vector<attrpriv::BayesNode> nodes(n);
  for (int k = 0; k < n; ++k) {
    nodes[k].id = std::string(1, static_cast<char>('a' + k));
    int sup = rng.range(2, max_support);
    for (int v = 0; v < sup; ++v) nodes[k].support.push_back(v);
    for (int p = 0; p < k; ++p) {
      if (rng.uniform() < edge_prob) nodes[k].parents.push_back(p);
    }
    std::size_t rows = 1;
    for (std::size_t p : nodes[k].parents) rows *= nodes[p].support.size();
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> row(sup);
      double total = 0.0;
      for (int v = 0; v < sup; ++v) {
        row[v] = 0.05 + rng.uniform();
        total += row[v];
      }
      for (int v = 0; v < sup; ++v) nodes[k].cpt.push_back(row[v] / total);
    }
  }
  return attrpriv::BayesNet(std::move(nodes));
}

// Independent d-separation decider: enumerate all undirected simple paths
// from `src` to `dst` and test each trail for activity under the classical
// rules (chain/fork blocked iff the middle node is observed; collider
// active iff the middle node or one of its descendants is observed).
inline bool path_d_connected(const attrpriv::BayesNet& net, std::size_t src,
                             std::size_t dst,
                             const std::set<std::size_t>& given) {
  const std::size_t n = net.size();
  // adjacency with direction: edge_dir[u][v] = true if u -> v
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t p : net.node(v).parents) edge[p][v] = true;
  }
  // descendants (including self)
  std::vector<std::set<std::size_t>> desc(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      if (!desc[v].insert(u).second) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (edge[u][w]) stack.push_back(w);
      }
    }
  }
  auto observed_or_descendant_observed = [&](std::size_t v) {
    for (std::size_t d : desc[v]) {
      if (given.count(d)) return true;
    }
    return false;
  };
  std::vector<std::size_t> path{src};
  std::vector<bool> used(n, false);
  used[src] = true;
  bool found = false;
  std::function<void()> dfs = [&]() {
    if (found) return;
    std::size_t tail = path.back();
    if (tail == dst && path.size() >= 2) {
      // check trail activity
      bool active = true;
      for (std::size_t k = 1; k + 1 < path.size() && active; ++k) {
        std::size_t a = path[k - 1], m = path[k], b = path[k + 1];
        bool in_a = edge[a][m];   // a -> m ?
        bool out_b = edge[m][b];  // m -> b ?
        bool collider = in_a && !out_b && edge[b][m];
        if (collider) {
          active = observed_or_descendant_observed(m);
        } else {
          active = !given.count(m);
        }
      }
      if (active) found = true;
      return;
    }
    if (tail == dst) return;
    for (std::size_t next = 0; next < n; ++next) {
      if (used[next] || (!edge[tail][next] && !edge[next][tail])) continue;
      used[next] = true;
      path.push_back(next);
      dfs();
      path.pop_back();
      used[next] = false;
    }
  };
  dfs();
  return found;
}

}  // namespace testutil
