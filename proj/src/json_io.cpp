#include "attrpriv/json_io.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "attrpriv/errors.hpp"

namespace attrpriv {

using nlohmann::json;

namespace {

const json& require(const json& doc, const std::string& field) {
  if (!doc.contains(field)) {
    throw ConfigError("config.schema", "missing field '" + field + "'");
  }
  return doc.at(field);
}

AttributeDomain parse_domain(const json& doc) {
  std::string kind = require(doc, "kind").get<std::string>();
  if (kind == "interval") {
    return AttributeDomain::interval(require(doc, "lo").get<double>(),
                                     require(doc, "hi").get<double>());
  }
  if (kind == "finite") {
    return AttributeDomain::finite(
        require(doc, "values").get<std::vector<double>>());
  }
  throw ConfigError("config.schema", "unknown domain kind '" + kind + "'");
}

CompareOp parse_op(const std::string& op) {
  if (op == ">") return CompareOp::Gt;
  if (op == ">=") return CompareOp::Ge;
  if (op == "<") return CompareOp::Lt;
  if (op == "<=") return CompareOp::Le;
  if (op == "=" || op == "==") return CompareOp::Eq;
  throw ConfigError("config.schema", "unknown comparison operator '" + op + "'");
}

QuerySpec parse_query(const json& doc, const ParsedConfig& config) {
  std::string kind = require(doc, "kind").get<std::string>();
  auto attr_index = [&](const json& v) -> std::size_t {
    std::string name = v.get<std::string>();
    for (std::size_t j = 0; j < config.names.size(); ++j) {
      if (config.names[j] == name) return j;
    }
    throw ConfigError("config.schema", "unknown attribute '" + name + "'");
  };
  if (kind == "mean") return QuerySpec::column_mean(attr_index(require(doc, "attribute")));
  if (kind == "sum") return QuerySpec::column_sum(attr_index(require(doc, "attribute")));
  if (kind == "threshold_count") {
    std::vector<Predicate> preds;
    for (const auto& p : require(doc, "predicates")) {
      Predicate pred;
      pred.attribute = attr_index(require(p, "attribute"));
      pred.op = parse_op(require(p, "op").get<std::string>());
      pred.constant = require(p, "value").get<double>();
      preds.push_back(pred);
    }
    return QuerySpec::threshold_count(std::move(preds));
  }
  throw ConfigError("config.schema", "unknown query kind '" + kind + "'");
}

SecretEvent parse_event(const json& doc) {
  SecretEvent e;
  if (doc.contains("interval")) {
    auto iv = doc.at("interval").get<std::vector<double>>();
    if (iv.size() != 2) {
      throw ConfigError("config.schema", "event interval needs [lo, hi]");
    }
    e.kind = SecretEvent::Kind::Interval;
    e.lo = iv[0];
    e.hi = iv[1];
  } else if (doc.contains("points")) {
    e.kind = SecretEvent::Kind::Points;
    e.points = doc.at("points").get<std::vector<double>>();
  } else {
    throw ConfigError("config.schema", "event needs 'interval' or 'points'");
  }
  return e;
}

BayesNet parse_bayesnet(const json& doc) {
  std::map<std::string, std::size_t> index;
  std::vector<BayesNode> nodes;
  const auto& node_list = require(doc, "nodes");
  for (const auto& nd : node_list) {
    std::string id = require(nd, "id").get<std::string>();
    if (!index.emplace(id, nodes.size()).second) {
      throw ConfigError("config.schema", "duplicate node id '" + id + "'");
    }
    BayesNode node;
    node.id = id;
    node.support = require(nd, "support").get<std::vector<double>>();
    nodes.push_back(std::move(node));
  }
  if (doc.contains("edges")) {
    for (const auto& edge : doc.at("edges")) {
      if (!edge.is_array() || edge.size() != 2) {
        throw ConfigError("config.schema", "edge must be a [from, to] pair");
      }
      auto from = index.find(edge[0].get<std::string>());
      auto to = index.find(edge[1].get<std::string>());
      if (from == index.end() || to == index.end()) {
        throw ConfigError("config.schema", "edge references unknown node");
      }
      nodes[to->second].parents.push_back(from->second);
    }
  }
  const auto& cpts = require(doc, "cpts");
  for (auto& node : nodes) {
    const auto& rows = require(cpts, node.id);
    // Nested rows, parent-configuration-major (first parent slowest).
    for (const auto& row : rows) {
      for (const auto& v : row) node.cpt.push_back(v.get<double>());
    }
  }
  return BayesNet(std::move(nodes));
}

ParameterFamily parse_parameter_family(const json& doc) {
  ParameterFamily pf{parse_bayesnet(doc), {}};
  if (!doc.contains("likelihoods")) {
    // Optional: only mechanisms needing conditional output distributions
    // (wasserstein) require per-attribute likelihood tables.
    pf.validate();
    return pf;
  }
  pf.likelihoods.resize(pf.net.size());
  const auto& liks = doc.at("likelihoods");
  for (std::size_t k = 0; k < pf.net.size(); ++k) {
    const auto& entry = require(liks, pf.net.node(k).id);
    AttributeLikelihood lik;
    lik.outcomes = require(entry, "outcomes").get<std::vector<double>>();
    for (const auto& row : require(entry, "rows")) {
      lik.rows.push_back(row.get<std::vector<double>>());
    }
    pf.likelihoods[k] = std::move(lik);
  }
  pf.validate();
  return pf;
}

DistributionClass parse_theta(const json& doc, std::optional<double> grid_step) {
  DistributionClass theta;
  std::string variant = require(doc, "variant").get<std::string>();
  if (variant == "gaussian_family") {
    theta.variant = DistributionClass::Variant::GaussianFamily;
    for (const auto& member : require(doc, "members")) {
      MultivariateGaussian g;
      g.mu = require(member, "mu").get<std::vector<double>>();
      for (const auto& row : require(member, "cov")) {
        g.cov.push_back(row.get<std::vector<double>>());
      }
      theta.gaussians.push_back(std::move(g));
    }
  } else if (variant == "parameter_network_family") {
    theta.variant = DistributionClass::Variant::ParameterNetworkFamily;
    for (const auto& member : require(doc, "members")) {
      theta.parameter_families.push_back(parse_parameter_family(member));
    }
  } else if (variant == "discrete_record_family") {
    theta.variant = DistributionClass::Variant::DiscreteRecordFamily;
    if (doc.contains("members")) {
      for (const auto& member : doc.at("members")) {
        BinaryDependenceModel m;
        m.n = require(member, "n").get<std::size_t>();
        m.p1 = require(member, "p1").get<double>();
        m.p2 = require(member, "p2").get<double>();
        theta.record_models.push_back(m);
      }
    } else if (doc.contains("grid")) {
      const auto& grid = doc.at("grid");
      std::size_t n = require(grid, "n").get<std::size_t>();
      auto r1 = require(grid, "p1").get<std::vector<double>>();
      auto r2 = require(grid, "p2").get<std::vector<double>>();
      if (r1.size() != 2 || r2.size() != 2) {
        throw ConfigError("config.schema", "grid ranges need [lo, hi]");
      }
      double step = grid_step.value_or(
          grid.contains("step") ? grid.at("step").get<double>() : 0.05);
      if (!(step > 0.0)) {
        throw ConfigError("config.schema", "grid step must be positive");
      }
      auto expand = [&](const std::vector<double>& r) {
        std::vector<double> vals;
        for (double v = r[0]; v < r[1] - 1e-12; v += step) vals.push_back(v);
        vals.push_back(r[1]);  // endpoints always included
        return vals;
      };
      for (double p1 : expand(r1)) {
        for (double p2 : expand(r2)) {
          theta.record_models.push_back({n, p1, p2});
        }
      }
    } else {
      throw ConfigError("config.schema",
                        "discrete_record_family needs 'members' or 'grid'");
    }
  } else {
    throw ConfigError("config.schema", "unknown theta variant '" + variant + "'");
  }
  return theta;
}

}  // namespace

ParsedConfig parse_framework_json(const nlohmann::json& doc,
                                  std::optional<double> grid_step) {
  ParsedConfig config;
  for (const auto& attr : require(doc, "attributes")) {
    config.names.push_back(require(attr, "name").get<std::string>());
    config.domains.push_back(parse_domain(require(attr, "domain")));
  }
  auto attr_index = [&](const std::string& name) -> std::size_t {
    for (std::size_t j = 0; j < config.names.size(); ++j) {
      if (config.names[j] == name) return j;
    }
    throw ConfigError("config.schema", "unknown attribute '" + name + "'");
  };
  for (const auto& s : require(doc, "sensitive")) {
    config.framework.sensitive.insert(attr_index(s.get<std::string>()));
  }
  for (const auto& s : require(doc, "secrets")) {
    SecretSpec spec;
    spec.attribute = attr_index(require(s, "attribute").get<std::string>());
    std::string notion = require(s, "notion").get<std::string>();
    if (notion == "dataset") {
      spec.notion = PrivacyNotion::DatasetLevel;
      std::string g = require(s, "g").get<std::string>();
      if (g == "mean") {
        spec.g = SecretFunction::ColumnMean;
      } else if (g == "sum") {
        spec.g = SecretFunction::ColumnSum;
      } else {
        throw ConfigError("config.schema", "unknown secret function '" + g + "'");
      }
    } else if (notion == "distributional") {
      spec.notion = PrivacyNotion::Distributional;
    } else {
      throw ConfigError("config.schema", "unknown notion '" + notion + "'");
    }
    for (const auto& e : require(s, "events")) {
      spec.events.push_back(parse_event(e));
    }
    config.framework.secrets.push_back(std::move(spec));
  }
  config.framework.theta = parse_theta(require(doc, "theta"), grid_step);
  config.query = parse_query(require(doc, "query"), config);
  config.framework.validate(config.names.size());
  config.query.validate(config.names.size());
  return config;
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("io.file", "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError("io.json", "cannot parse '" + path + "': " + e.what());
  }
  return doc;
}

}  // namespace

ParsedConfig load_framework_file(const std::string& path,
                                 std::optional<double> grid_step) {
  return parse_framework_json(load_json_file(path), grid_step);
}

Dataset load_dataset_file(const std::string& path, const ParsedConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("io.file", "cannot open '" + path + "'");
  return read_csv(in, config.names, config.domains);
}

ApproximationSet parse_approximations(const nlohmann::json& doc,
                                      const ParsedConfig& config) {
  ApproximationSet set;
  for (const auto& entry : require(doc, "approximations")) {
    std::string name = require(entry, "attribute").get<std::string>();
    std::size_t attr = config.names.size();
    for (std::size_t j = 0; j < config.names.size(); ++j) {
      if (config.names[j] == name) attr = j;
    }
    if (attr == config.names.size()) {
      throw ConfigError("config.schema", "unknown attribute '" + name + "'");
    }
    GaussianApprox approx;
    approx.mean = require(entry, "mean").get<double>();
    approx.variance = require(entry, "variance").get<double>();
    set[attr][{require(entry, "event").get<std::size_t>(),
               require(entry, "theta").get<std::size_t>()}] = approx;
  }
  return set;
}

ApproximationSet load_approximations_file(const std::string& path,
                                          const ParsedConfig& config) {
  return parse_approximations(load_json_file(path), config);
}

namespace {

json named_map(const std::map<std::size_t, double>& by_attr,
               const ParsedConfig& config) {
  json out = json::object();
  for (const auto& [attr, value] : by_attr) {
    out[config.names[attr]] = value;
  }
  return out;
}

}  // namespace

json report_to_json(const GaussianMechanismReport& report,
                    const ParsedConfig& config, bool reveal_noise) {
  json out;
  out["mechanism"] = report.mechanism;
  out["sensitivities"] = named_map(report.sensitivities, config);
  out["sigma2"] = report.sigma2;
  out["c"] = report.c;
  out["output"] = report.output;
  out["seed"] = report.seed;
  if (reveal_noise) out["noise"] = report.noise;
  return out;
}

json report_to_json(const QuiltReport& report, const ParsedConfig& config,
                    bool reveal_noise) {
  const bool baseline = report.mechanism == "mqm-baseline";
  const BayesNet* net = nullptr;
  if (!config.framework.theta.parameter_families.empty()) {
    net = &config.framework.theta.parameter_families.front().net;
  }
  auto label = [&](std::size_t k) -> std::string {
    if (baseline && net) return net->node(k).id;
    return config.names[k];
  };
  auto node_label = [&](std::size_t k) -> std::string {
    return net ? net->node(k).id : std::to_string(k);
  };
  json out;
  out["mechanism"] = report.mechanism;
  json per = json::object();
  for (const auto& [attr, choice] : report.per_attribute) {
    json entry;
    entry["scale"] = choice.scale;
    if (choice.quilt) {
      entry["influence"] = choice.influence;
      json q = json::array(), n = json::array(), r = json::array();
      for (std::size_t v : choice.quilt->quilt) q.push_back(node_label(v));
      for (std::size_t v : choice.quilt->near) n.push_back(node_label(v));
      for (std::size_t v : choice.quilt->remote) r.push_back(node_label(v));
      entry["quilt"] = {{"Q", q}, {"N", n}, {"R", r}};
    } else {
      entry["quilt"] = nullptr;
    }
    per[label(attr)] = std::move(entry);
  }
  out["per_attribute"] = std::move(per);
  out["scale"] = report.scale;
  out["output"] = report.output;
  out["seed"] = report.seed;
  if (reveal_noise) out["noise"] = report.noise;
  return out;
}

json report_to_json(const WassersteinReport& report, const ParsedConfig& config,
                    bool reveal_noise) {
  json out;
  out["mechanism"] = report.mechanism;
  json pairs = json::array();
  for (const auto& pd : report.per_pair) {
    pairs.push_back({{"attribute", config.names[pd.attribute]},
                     {"event_a", pd.event_a},
                     {"event_b", pd.event_b},
                     {"theta", pd.theta},
                     {"distance", pd.distance}});
  }
  out["per_pair_distances"] = std::move(pairs);
  out["W"] = report.w;
  out["scale"] = report.scale;
  out["output"] = report.output;
  out["seed"] = report.seed;
  if (reveal_noise) out["noise"] = report.noise;
  return out;
}

}  // namespace attrpriv
