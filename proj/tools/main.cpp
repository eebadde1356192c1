// Command-line front end: dataset/config ingestion, mechanism dispatch,
// deterministic seeding, and structured JSON reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "attrpriv/divergence.hpp"
#include "attrpriv/errors.hpp"
#include "attrpriv/gaussian_mechanism.hpp"
#include "attrpriv/json_io.hpp"
#include "attrpriv/quilt.hpp"
#include "attrpriv/wasserstein.hpp"

namespace {

using attrpriv::ConfigError;
using attrpriv::IoError;
using nlohmann::json;

struct RunConfig {
  std::string dataset_path;
  std::string framework_path;
  std::string mechanism;
  std::string approximations_path;
  std::string distribution_path;
  std::string approximation_path;
  double epsilon = 1.0;
  double delta = 0.0;
  double beta = 0.05;
  double eta = 0.01;
  double lipschitz = 1.0;
  std::uint64_t seed = 0;
  std::size_t max_quilt_size = 3;
  int bins = 64;
  std::optional<double> grid_step;
  bool reveal_noise = false;
};

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

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

void check_delta(const RunConfig& cfg) {
  const bool gaussian = cfg.mechanism == "apgm" || cfg.mechanism == "apgmng";
  if (gaussian && !(cfg.delta > 0.0)) {
    throw ConfigError("config.params",
                      cfg.mechanism + " requires --delta > 0");
  }
  if (!gaussian && cfg.delta != 0.0) {
    throw ConfigError("config.params",
                      cfg.mechanism + " does not take --delta");
  }
}

std::vector<attrpriv::BayesNet> baseline_nets(
    const attrpriv::ParsedConfig& config) {
  if (config.framework.theta.variant !=
      attrpriv::DistributionClass::Variant::ParameterNetworkFamily) {
    throw ConfigError("config.mechanism",
                      "mqm-baseline needs a parameter_network_family theta "
                      "holding the value-level networks");
  }
  std::vector<attrpriv::BayesNet> nets;
  for (const auto& pf : config.framework.theta.parameter_families) {
    nets.push_back(pf.net);
  }
  return nets;
}

int cmd_release(const RunConfig& cfg) {
  check_delta(cfg);
  auto config = attrpriv::load_framework_file(cfg.framework_path, cfg.grid_step);
  auto data = attrpriv::load_dataset_file(cfg.dataset_path, config);
  attrpriv::PrivacyParams params{cfg.epsilon, cfg.delta};
  params.validate();
  if (cfg.mechanism == "apgm") {
    auto report = attrpriv::apgm(data, config.query, config.framework, params,
                                 cfg.seed);
    emit(attrpriv::report_to_json(report, config, cfg.reveal_noise));
  } else if (cfg.mechanism == "apgmng") {
    if (cfg.approximations_path.empty()) {
      throw ConfigError("config.params", "apgmng requires --approximations");
    }
    auto approx =
        attrpriv::load_approximations_file(cfg.approximations_path, config);
    auto report = attrpriv::apgmng(data, config.query, approx, config.framework,
                                   params, cfg.seed);
    emit(attrpriv::report_to_json(report, config, cfg.reveal_noise));
  } else if (cfg.mechanism == "apmqm") {
    auto report = attrpriv::apmqm(data, config.query, config.framework,
                                  cfg.epsilon, cfg.max_quilt_size, cfg.seed);
    emit(attrpriv::report_to_json(report, config, cfg.reveal_noise));
  } else if (cfg.mechanism == "mqm-baseline") {
    auto report = attrpriv::baseline_mqm(data, config.query, cfg.lipschitz,
                                         baseline_nets(config), cfg.epsilon,
                                         cfg.max_quilt_size, cfg.seed);
    emit(attrpriv::report_to_json(report, config, cfg.reveal_noise));
  } else if (cfg.mechanism == "wasserstein") {
    auto report = attrpriv::wasserstein_mechanism(data, config.query,
                                                  config.framework, cfg.epsilon,
                                                  cfg.seed);
    emit(attrpriv::report_to_json(report, config, cfg.reveal_noise));
  } else {
    throw ConfigError("config.params",
                      "unknown mechanism '" + cfg.mechanism + "'");
  }
  return 0;
}

int cmd_inspect(const RunConfig& cfg) {
  auto config = attrpriv::load_framework_file(cfg.framework_path, cfg.grid_step);
  auto data = attrpriv::load_dataset_file(cfg.dataset_path, config);
  json out;
  out["command"] = "inspect";
  out["mechanism"] = cfg.mechanism;
  if (cfg.mechanism == "apgm") {
    attrpriv::PrivacyParams params{cfg.epsilon, cfg.delta};
    params.validate();
    json sens = json::object();
    for (const auto& secret : config.framework.secrets) {
      sens[config.names[secret.attribute]] = attrpriv::sensitivity_gaussian(
          config.framework, config.query, secret, data.record_count());
    }
    out["sensitivities"] = std::move(sens);
    out["sigma2"] = attrpriv::apgm_sigma2(config.framework, config.query,
                                          data.record_count(), params);
    out["beta"] = cfg.beta;
    out["alpha"] = attrpriv::accuracy_bound(config.framework, config.query,
                                            data.record_count(), params,
                                            cfg.beta);
  } else if (cfg.mechanism == "apmqm" || cfg.mechanism == "mqm-baseline") {
    const bool baseline = cfg.mechanism == "mqm-baseline";
    auto nets = baseline_nets(config);
    const auto& net = nets.front();
    json per = json::object();
    auto inspect_node = [&](std::size_t node) {
      json quilts = json::array();
      for (const auto& q :
           attrpriv::enumerate_quilts(net, node, cfg.max_quilt_size)) {
        json e;
        json qq = json::array(), nn = json::array(), rr = json::array();
        for (std::size_t v : q.quilt) qq.push_back(net.node(v).id);
        for (std::size_t v : q.near) nn.push_back(net.node(v).id);
        for (std::size_t v : q.remote) rr.push_back(net.node(v).id);
        e["Q"] = qq;
        e["N"] = nn;
        e["R"] = rr;
        e["influence"] =
            baseline
                ? attrpriv::variable_max_influence(nets, node, q.quilt)
                : attrpriv::max_influence(
                      config.framework.theta.parameter_families, node, q.quilt);
        quilts.push_back(std::move(e));
      }
      per[net.node(node).id] = std::move(quilts);
    };
    if (baseline) {
      for (std::size_t node = 0; node < net.size(); ++node) inspect_node(node);
    } else {
      for (std::size_t attr : config.framework.sensitive) {
        inspect_node(net.index_of(config.names[attr]));
      }
    }
    out["quilts"] = std::move(per);
  } else if (cfg.mechanism == "wasserstein") {
    // Dry run: reuse the mechanism's distance computation, discard the noise.
    auto report = attrpriv::wasserstein_mechanism(data, config.query,
                                                  config.framework, cfg.epsilon,
                                                  cfg.seed);
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
  } else {
    throw ConfigError("config.params",
                      "unknown mechanism '" + cfg.mechanism + "'");
  }
  emit(out);
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  json fdoc = load_json_file(cfg.distribution_path);
  json adoc = load_json_file(cfg.approximation_path);
  auto get = [](const json& d, const char* k) {
    if (!d.contains(k)) {
      throw ConfigError("config.schema",
                        std::string("missing field '") + k + "'");
    }
    return d.at(k);
  };
  attrpriv::DiscreteDistribution f(
      get(fdoc, "points").get<std::vector<double>>(),
      get(fdoc, "probs").get<std::vector<double>>());
  attrpriv::GaussianApprox approx{get(adoc, "mean").get<double>(),
                                  get(adoc, "variance").get<double>()};
  double lambda = attrpriv::certify_approximation(f, approx, cfg.eta, cfg.bins);
  attrpriv::PrivacyParams params{cfg.epsilon, cfg.delta};
  params.validate();
  // The eta-discounted divergence can come out negative (the discount makes
  // a perfect match land at ln(1 - eta) < 0); the privacy budget only
  // consumes a nonnegative bound, so report the clamped value and keep the
  // signed estimate for diagnostics.
  double lambda_bound = std::max(0.0, lambda);
  auto eff = attrpriv::effective_privacy(params, {cfg.eta, lambda_bound});
  json out;
  out["command"] = "certify";
  out["eta"] = cfg.eta;
  out["bins"] = cfg.bins;
  out["lambda_eta"] = lambda_bound;
  out["lambda_raw"] = lambda;
  out["effective_epsilon"] = eff.epsilon;
  out["effective_delta"] = eff.delta;
  out["delta_clamped"] = eff.delta_clamped;
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attribute-private query release"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* cmd, bool need_data) {
    cmd->add_option("--framework", cfg.framework_path,
                    "framework JSON document")
        ->required();
    auto* d = cmd->add_option("--dataset", cfg.dataset_path, "CSV dataset");
    if (need_data) d->required();
    cmd->add_option("--mechanism", cfg.mechanism,
                    "apgm | apgmng | apmqm | mqm-baseline | wasserstein")
        ->required();
    cmd->add_option("--epsilon", cfg.epsilon, "privacy budget epsilon");
    cmd->add_option("--delta", cfg.delta, "privacy budget delta");
    cmd->add_option("--seed", cfg.seed, "64-bit RNG seed");
    cmd->add_option("--beta", cfg.beta, "accuracy failure probability");
    cmd->add_option("--max-quilt-size", cfg.max_quilt_size,
                    "largest |Q| enumerated");
    cmd->add_option("--grid-step", cfg.grid_step, "theta grid step override");
    cmd->add_option("--approximations", cfg.approximations_path,
                    "Gaussian approximation set (apgmng)");
    cmd->add_option("--lipschitz", cfg.lipschitz,
                    "query Lipschitz constant (mqm-baseline)");
  };

  auto* release = app.add_subcommand("release", "run a mechanism and release");
  add_common(release, true);
  release->add_flag("--reveal-noise", cfg.reveal_noise,
                    "include the drawn noise in the report (debugging)");

  auto* inspect = app.add_subcommand("inspect", "calibration without release");
  add_common(inspect, true);

  auto* certify =
      app.add_subcommand("certify", "estimate lambda_eta for an approximation");
  certify->add_option("--distribution", cfg.distribution_path,
                      "true distribution JSON {points, probs}")
      ->required();
  certify->add_option("--approximation", cfg.approximation_path,
                      "Gaussian approximation JSON {mean, variance}")
      ->required();
  certify->add_option("--eta", cfg.eta, "discounted mass eta");
  certify->add_option("--bins", cfg.bins, "binning resolution");
  certify->add_option("--epsilon", cfg.epsilon, "privacy budget epsilon");
  certify->add_option("--delta", cfg.delta, "privacy budget delta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (release->parsed()) return cmd_release(cfg);
    if (inspect->parsed()) return cmd_inspect(cfg);
    return cmd_certify(cfg);
  } catch (const IoError& e) {
    emit(json{{"code", e.code()}, {"message", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    emit(json{{"code", e.code()}, {"message", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
