// SPDX-License-Identifier: Apache-2.0
#include "uavcic/config.hpp"
#include "uavcic/errors.hpp"
#include "uavcic/experiments.hpp"
#include "uavcic/units.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace uavcic;

namespace {

StreamAssociation to_assoc(const std::vector<std::vector<int>>& streams) {
  StreamAssociation a;
  for (auto s : streams) {
    std::sort(s.begin(), s.end());
    a.streams.push_back(std::move(s));
  }
  return a;
}

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? default_config() : load_config(path);
}

py::dict trace_dict(const ScaTrace& t) {
  py::dict d;
  d["sum_rates"] = t.sum_rates;
  d["max_violation"] = t.max_violation;
  d["rates"] = t.solution.rates;
  d["sum_rate"] = t.final_sum_rate();
  d["converged"] = t.converged;
  d["iterations"] = t.iterations;
  d["kkt_residual"] = t.kkt_residual;
  d["beamformers"] = t.solution.w;
  d["power"] = t.solution.power();
  d["residual_interference"] = t.solution.residual_interference;
  return d;
}

Scenario scenario_from(const std::string& config, std::uint64_t seed, std::optional<double> power_dbm,
                       std::optional<double> theta_dbm) {
  Scenario s = config_or_default(config).scenario;
  s.seed = seed;
  if (power_dbm) s.power = units::dbm_to_watts(*power_dbm);
  if (theta_dbm) s.theta = uniform_limits(s.topology, units::dbm_to_watts(*theta_dbm));
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-beam UAV uplink with cooperative interference cancellation";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("max_dof", [](int antennas, const std::string& config) {
        const auto r = max_dof(config_or_default(config).scenario.topology, antennas);
        std::optional<std::vector<std::vector<int>>> witness;
        if (r.witness) witness = r.witness->streams;
        return py::make_tuple(r.dof, witness);
      },
      py::arg("antennas"), py::arg("config") = "",
      "Maximum DoF and one association reaching it on the configured topology.");

  m.def("dof_table", [](const std::string& config) {
        std::vector<std::tuple<int, int, int, int>> out;
        for (const auto& r : run_dof_vs_m(config_or_default(config)))
          out.emplace_back(r.antennas, r.coop, r.comp, r.cognitive);
        return out;
      },
      py::arg("config") = "", "Rows (antennas, coop, comp, cognitive) over the configured antenna grid.");

  m.def("theorem1_feasible", [](const std::vector<std::vector<int>>& assoc, int antennas, const std::string& config) {
        return theorem1_feasible(config_or_default(config).scenario.topology, antennas, to_assoc(assoc));
      },
      py::arg("association"), py::arg("antennas"), py::arg("config") = "");

  m.def("parse_association", [](const std::string& literal) { return parse_association(literal).streams; });

  m.def("water_fill", [](const std::vector<double>& gains, double power) {
        const auto r = water_fill(gains, power);
        return py::make_tuple(r.capacity, r.powers, r.water_level);
      },
      py::arg("gains"), py::arg("power"), "Capacity, per-mode powers and water level.");

  m.def("comp_capacity", [](const std::vector<double>& singular_values, double power) {
        return comp_capacity(singular_values, power).capacity;
      },
      py::arg("singular_values"), py::arg("power"));

  m.def("eval_surrogate", [](double a, double b, double rate, double eta, double at, double bt, double ct) {
        const auto v = convex::eval_surrogate(a, b, rate, eta, {at, bt, ct});
        return py::make_tuple(v.value, std::vector<double>(v.grad.begin(), v.grad.end()));
      },
      py::arg("a"), py::arg("b"), py::arg("rate"), py::arg("eta"), py::arg("a_anchor"), py::arg("b_anchor"),
      py::arg("c_anchor"));

  m.def("sample_channels", [](std::uint64_t seed, const std::string& config) {
        const auto s = scenario_from(config, seed, std::nullopt, std::nullopt);
        const auto ch = s.sample();
        CMatrix h(ch.antennas(), static_cast<Eigen::Index>(ch.h.size()));
        for (std::size_t k = 0; k < ch.h.size(); ++k) h.col(static_cast<Eigen::Index>(k)) = ch.h[k];
        return py::make_tuple(h, ch.sigma2);
      },
      py::arg("seed"), py::arg("config") = "", "Channel matrix (antennas x GBS) and noise powers in Watts.");

  m.def("run_sca", [](const std::vector<std::vector<int>>& assoc, std::uint64_t seed, std::optional<double> power_dbm,
                      std::optional<double> theta_dbm, const std::string& config) {
        const auto cfg = config_or_default(config);
        const auto s = scenario_from(config, seed, power_dbm, theta_dbm);
        return trace_dict(run_sca(s.sample(), s.topology, to_assoc(assoc), s.power, s.theta, cfg.solver));
      },
      py::arg("association"), py::arg("seed") = 1, py::arg("power_dbm") = py::none(),
      py::arg("theta_dbm") = py::none(), py::arg("config") = "");

  m.def("optimize", [](std::uint64_t seed, std::optional<double> power_dbm, std::optional<double> theta_dbm,
                       const std::string& config) {
        const auto cfg = config_or_default(config);
        const auto s = scenario_from(config, seed, power_dbm, theta_dbm);
        const auto ch = s.sample();
        const auto r = optimize_scenario(s, ch, cfg.solver);
        py::dict d = trace_dict(r.best_run().trace);
        d["association"] = r.best_run().association.streams;
        d["dof"] = r.dof;
        d["associations_tried"] = r.runs.size();
        d["comp_capacity"] = comp_capacity(ch, s.topology, s.power).capacity;
        d["cognitive_sum_rate"] = cognitive_beamforming(s, ch, cfg.solver).trace.final_sum_rate();
        return d;
      },
      py::arg("seed") = 1, py::arg("power_dbm") = py::none(), py::arg("theta_dbm") = py::none(),
      py::arg("config") = "");

  m.def("dbm_to_watts", &units::dbm_to_watts);
  m.def("watts_to_dbm", &units::watts_to_dbm);
}
