// SPDX-License-Identifier: Apache-2.0
//
// YAML experiment configuration. Units at this boundary are dBm, dB, MHz and
// meters; everything is converted to linear units once, here.
#pragma once

#include "uavcic/sca.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uavcic {

enum class ExperimentKind { dof_vs_m, convergence, sweep_theta, sweep_power, single };

const char* to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

struct ExperimentConfig {
  Scenario scenario;
  ScaConfig solver;
  ExperimentKind kind = ExperimentKind::single;
  std::vector<int> antenna_grid{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> theta_grid_dbm{-100, -90, -80, -70, -60, -50};
  std::vector<double> power_grid_dbm{10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::vector<std::uint64_t> seeds;            // defaults to 1..50
  std::string output_dir = "out";
  std::optional<StreamAssociation> association;  // pins the association for convergence/single
  std::vector<StreamAssociation> pinned;         // extra cooperative curves in sweeps
  std::optional<StreamAssociation> cognitive_decoders;

  /// Throws ConfigError when a grid is empty, seeds repeat, or the topology or
  /// an association is invalid.
  void validate() const;
};

/// Built-in defaults: reference scenario, 50 seeds, both reference
/// associations pinned.
ExperimentConfig default_config();

/// Parse YAML text. Unknown keys are errors; messages carry line numbers.
/// `origin` names the source in messages.
ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin = "<config>");

/// Read and parse a YAML file.
ExperimentConfig load_config(const std::string& path);

}  // namespace uavcic
