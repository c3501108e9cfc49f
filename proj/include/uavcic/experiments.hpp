// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers: DoF table, SCA convergence trace, interference
// temperature and transmit power sweeps, and single-scenario optimization.
// Seeds and grid points are processed in order, so outputs are reproducible
// byte for byte.
#pragma once

#include "uavcic/benchmarks.hpp"
#include "uavcic/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace uavcic {

struct DofRow {
  int antennas = 0;
  int coop = 0;
  int comp = 0;
  int cognitive = 0;
};

std::vector<DofRow> run_dof_vs_m(const ExperimentConfig& cfg);

/// CSV: antennas,coop_dof,comp_dof,cognitive_dof.
void write_dof_csv(std::ostream& os, const std::vector<DofRow>& rows);

/// Association used when the config pins none: the first pinned association,
/// else the DoF witness.
StreamAssociation convergence_association(const ExperimentConfig& cfg);

/// One SCA run at the scenario seed with the pinned association.
ScaTrace run_convergence(const ExperimentConfig& cfg);

enum class SweepAxis { theta, power };

/// Column name of the swept value: theta_dbm or power_dbm.
const char* axis_column(SweepAxis axis);

/// Scenario of `cfg` with the swept quantity set to `x` dBm and the given seed.
Scenario scenario_at(const ExperimentConfig& cfg, SweepAxis axis, double x, std::uint64_t seed);

/// Which schemes a sweep evaluates.
struct SweepSchemes {
  bool pinned = true;     // every pinned cooperative association
  bool best = true;       // best DoF-optimal cooperative association
  bool comp = true;
  bool cognitive = true;
};

/// One scheme evaluated at one (grid point, seed).
struct SweepSample {
  double x = 0.0;
  std::uint64_t seed = 0;
  std::string scheme;            // pinned1, pinned2, ..., coop_best, comp, cognitive
  StreamAssociation association; // empty for comp
  double sum_rate = 0.0;
  bool converged = true;
  BeamformingSolution solution;  // empty for comp
};

struct SweepSummaryRow {
  double x = 0.0;
  std::vector<double> mean;  // per scheme, in SweepResult::schemes order
  std::vector<double> stddev;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::theta;
  std::vector<std::string> schemes;
  std::vector<SweepSample> samples;  // grid-major, then seed, then scheme
  std::vector<SweepSummaryRow> summary;

  /// Seed-mean of a scheme at a grid point. Throws std::out_of_range if absent.
  double mean(const std::string& scheme, double x) const;
};

SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const SweepSchemes& schemes = {});
SweepResult run_sweep_theta(const ExperimentConfig& cfg, const SweepSchemes& schemes = {});
SweepResult run_sweep_power(const ExperimentConfig& cfg, const SweepSchemes& schemes = {});

/// Wide CSV for plotting: x column, then <scheme>_mean,<scheme>_std per scheme.
void write_sweep_csv(std::ostream& os, const SweepResult& r);

/// Long CSV: x,seed,scheme,association,sum_rate_bps_hz,converged.
void write_samples_csv(std::ostream& os, const SweepResult& r);

/// Every beamformer coefficient: x,seed,scheme,association,stream,rate_bps_hz,antenna_index,re,im.
void write_beamformers_csv(std::ostream& os, SweepAxis axis, const std::vector<SweepSample>& samples);

/// Association written without commas, e.g. 4+7|5+8|6.
std::string association_token(const StreamAssociation& a);
StreamAssociation parse_association_token(const std::string& token);

struct Revalidation {
  std::size_t solutions = 0;
  double max_violation = 0.0;  // see max_constraint_violation
};

/// Reload a beamformers CSV, redraw the channels from (cfg, x, seed) and check
/// power, interference and claimed rates again.
Revalidation revalidate_beamformers(const ExperimentConfig& cfg, SweepAxis axis, std::istream& in);

/// Optimize the scenario at its own seed; a pinned association skips the search.
struct OptimizeOutcome {
  OptimizationResult result;
  CompResult comp;
  CognitiveResult cognitive;
};

OptimizeOutcome run_optimize(const ExperimentConfig& cfg);

/// CSV: association,sum_rate_bps_hz,converged,iterations,kkt_residual,best.
void write_optimize_csv(std::ostream& os, const OptimizeOutcome& o);

}  // namespace uavcic
