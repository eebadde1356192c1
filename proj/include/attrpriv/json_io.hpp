#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "attrpriv/divergence.hpp"
#include "attrpriv/framework.hpp"
#include "attrpriv/quilt.hpp"
#include "attrpriv/wasserstein.hpp"

namespace attrpriv {

// A parsed framework config: attribute declarations, the Pufferfish
// framework, and the query to release.
struct ParsedConfig {
  std::vector<std::string> names;
  std::vector<AttributeDomain> domains;
  PufferfishFramework framework;
  QuerySpec query;
};

// Parses the framework JSON document (fields: attributes, sensitive,
// secrets, theta, query). `grid_step` overrides the step of a
// discrete-record-family grid when present.
ParsedConfig parse_framework_json(const nlohmann::json& doc,
                                  std::optional<double> grid_step = {});

ParsedConfig load_framework_file(const std::string& path,
                                 std::optional<double> grid_step = {});

Dataset load_dataset_file(const std::string& path, const ParsedConfig& config);

// Approximation sets for apgmng, keyed by attribute name, event index and
// theta index.
ApproximationSet parse_approximations(const nlohmann::json& doc,
                                      const ParsedConfig& config);
ApproximationSet load_approximations_file(const std::string& path,
                                          const ParsedConfig& config);

nlohmann::json report_to_json(const GaussianMechanismReport& report,
                              const ParsedConfig& config, bool reveal_noise);
nlohmann::json report_to_json(const QuiltReport& report,
                              const ParsedConfig& config, bool reveal_noise);
nlohmann::json report_to_json(const WassersteinReport& report,
                              const ParsedConfig& config, bool reveal_noise);

}  // namespace attrpriv
