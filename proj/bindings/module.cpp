#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "attrpriv/divergence.hpp"
#include "attrpriv/errors.hpp"
#include "attrpriv/gaussian_mechanism.hpp"
#include "attrpriv/json_io.hpp"
#include "attrpriv/normal.hpp"
#include "attrpriv/quilt.hpp"
#include "attrpriv/wasserstein.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

attrpriv::DiscreteDistribution make_distribution(
    const std::vector<double>& points, const std::vector<double>& probs) {
  return attrpriv::DiscreteDistribution(points, probs);
}

std::pair<std::vector<double>, std::vector<double>> as_pair(
    const attrpriv::DiscreteDistribution& d) {
  return {d.points(), d.probs()};
}

std::string release(const std::string& framework_json,
                    const std::string& csv_text, const std::string& mechanism,
                    double epsilon, double delta, std::uint64_t seed,
                    std::size_t max_quilt_size, double lipschitz,
                    bool reveal_noise, std::optional<double> grid_step) {
  auto config = attrpriv::parse_framework_json(json::parse(framework_json),
                                               grid_step);
  std::istringstream in(csv_text);
  attrpriv::Dataset data = attrpriv::read_csv(in, config.names, config.domains);
  json out;
  if (mechanism == "apgm") {
    attrpriv::PrivacyParams params{epsilon, delta};
    out = attrpriv::report_to_json(
        attrpriv::apgm(data, config.query, config.framework, params, seed),
        config, reveal_noise);
  } else if (mechanism == "apmqm") {
    out = attrpriv::report_to_json(
        attrpriv::apmqm(data, config.query, config.framework, epsilon,
                        max_quilt_size, seed),
        config, reveal_noise);
  } else if (mechanism == "wasserstein") {
    out = attrpriv::report_to_json(
        attrpriv::wasserstein_mechanism(data, config.query, config.framework,
                                        epsilon, seed),
        config, reveal_noise);
  } else if (mechanism == "mqm-baseline") {
    std::vector<attrpriv::BayesNet> nets;
    for (const auto& pf : config.framework.theta.parameter_families) {
      nets.push_back(pf.net);
    }
    out = attrpriv::report_to_json(
        attrpriv::baseline_mqm(data, config.query, lipschitz, nets, epsilon,
                               max_quilt_size, seed),
        config, reveal_noise);
  } else {
    throw attrpriv::ConfigError("config.mechanism",
                                "unknown mechanism '" + mechanism + "'");
  }
  return out.dump(2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "noisy release of statistical queries with attribute-level "
            "privacy guarantees";

  py::register_exception<attrpriv::ConfigError>(m, "ConfigError",
                                                PyExc_ValueError);
  py::register_exception<attrpriv::IoError>(m, "IoError", PyExc_IOError);

  m.def(
      "w_infinity",
      [](const std::vector<double>& xp, const std::vector<double>& xq,
         const std::vector<double>& yp, const std::vector<double>& yq) {
        return attrpriv::w_infinity(make_distribution(xp, xq),
                                    make_distribution(yp, yq));
      },
      py::arg("mu_points"), py::arg("mu_probs"), py::arg("nu_points"),
      py::arg("nu_probs"),
      "infinity-Wasserstein distance between two finite distributions");

  m.def(
      "conditional_count_distribution",
      [](std::size_t n, double p1, double p2, std::size_t a) {
        return as_pair(attrpriv::conditional_count_distribution(
            attrpriv::BinaryDependenceModel{n, p1, p2}, a));
      },
      py::arg("n"), py::arg("p1"), py::arg("p2"), py::arg("a"),
      "distribution of the column-1 sum given the column-2 sum equals a");

  m.def(
      "conditional_count_distribution_param",
      [](std::size_t n, double phi2, double alpha, double beta) {
        return as_pair(
            attrpriv::conditional_count_distribution_param(n, phi2, alpha, beta));
      },
      py::arg("n"), py::arg("phi2"), py::arg("alpha"), py::arg("beta"),
      "binomial count distribution under phi_1 = alpha + beta * phi_2");

  m.def(
      "max_divergence",
      [](const std::vector<double>& pts, const std::vector<double>& pp,
         const std::vector<double>& qp) {
        return attrpriv::max_divergence(make_distribution(pts, pp),
                                        make_distribution(pts, qp));
      },
      py::arg("points"), py::arg("p"), py::arg("q"));

  m.def(
      "approx_max_divergence",
      [](const std::vector<double>& pts, const std::vector<double>& pp,
         const std::vector<double>& qp, double eta) {
        return attrpriv::approx_max_divergence(make_distribution(pts, pp),
                                               make_distribution(pts, qp), eta);
      },
      py::arg("points"), py::arg("p"), py::arg("q"), py::arg("eta"));

  m.def(
      "certify_approximation",
      [](const std::vector<double>& pts, const std::vector<double>& probs,
         double mean, double variance, double eta, int bins) {
        return attrpriv::certify_approximation(
            make_distribution(pts, probs), {mean, variance}, eta, bins);
      },
      py::arg("points"), py::arg("probs"), py::arg("mean"), py::arg("variance"),
      py::arg("eta"), py::arg("bins") = 64);

  m.def(
      "effective_privacy",
      [](double epsilon, double delta, double eta, double lambda_eta) {
        auto out = attrpriv::effective_privacy({epsilon, delta},
                                               {eta, lambda_eta});
        return py::make_tuple(out.epsilon, out.delta, out.delta_clamped);
      },
      py::arg("epsilon"), py::arg("delta"), py::arg("eta"),
      py::arg("lambda_eta"),
      "(epsilon + 2 lambda, e^lambda delta + eta, clamped?)");

  m.def("normal_cdf", &attrpriv::normal_cdf, py::arg("x"));
  m.def("gaussian_inverse_cdf", &attrpriv::gaussian_inverse_cdf, py::arg("p"));

  m.def("release", &release, py::arg("framework_json"), py::arg("csv_text"),
        py::arg("mechanism"), py::arg("epsilon") = 1.0, py::arg("delta") = 0.0,
        py::arg("seed") = 0, py::arg("max_quilt_size") = 3,
        py::arg("lipschitz") = 1.0, py::arg("reveal_noise") = false,
        py::arg("grid_step") = std::nullopt,
        "run a mechanism end to end and return the JSON report as a string");
}
