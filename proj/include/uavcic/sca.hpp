// SPDX-License-Identifier: Apache-2.0
//
// Successive convex approximation for sum-rate maximization with a fixed
// stream association, and the outer association selection.
#pragma once

#include "uavcic/association.hpp"
#include "uavcic/beamforming.hpp"
#include "uavcic/convex.hpp"
#include "uavcic/scenario.hpp"

#include <iosfwd>
#include <vector>

namespace uavcic {

struct ScaConfig {
  double epsilon = 1e-3;     // bps/Hz
  int max_iterations = 100;
  double rate_backoff = 0.99;  // start rates as a fraction of the achieved ones
  std::size_t association_cap = kDefaultAssociationCap;
  convex::SolveOptions solver;
};

/// Strictly feasible start for the convex subproblem with tight anchors.
struct ScaStart {
  convex::SubproblemSpec spec;
  RVector z;
  std::vector<std::size_t> active;  // original stream index of each spec stream
  BeamformingSolution solution;     // beamformers at the start, in Watts
};

/// Zero-forcing start (or projected matched filter when the association does
/// not allow zero forcing), scaled to 0.99 of every limit. Rates start at
/// rate_backoff * log2(1 + min SINR), each eta sits 0.1% above its
/// interference-plus-noise level, and anchors are tight at that point.
/// Streams forced to zero by a zero interference limit are dropped.
ScaStart init_anchors(const ChannelSet& ch, const Topology& t, const StreamAssociation& a, double power,
                      const InterferenceLimits& theta, const ScaConfig& cfg = {});

/// Re-anchor every link at z: a~, b~ from the current amplitudes and
/// c~ = sqrt((2^R - 1)/eta).
void tighten_anchors(convex::SubproblemSpec& spec, const RVector& z);

struct ScaTrace {
  std::vector<double> sum_rates;       // [0] is the start; one entry per iteration after
  std::vector<double> max_violation;   // scaled, see max_constraint_violation
  std::vector<double> rate_variables;  // final R_j per original stream
  BeamformingSolution solution;        // final beamformers with evaluated rates
  bool converged = false;
  int iterations = 0;
  double kkt_residual = 0.0;           // of the un-convexified problem at the final point

  double final_sum_rate() const { return sum_rates.empty() ? 0.0 : sum_rates.back(); }
};

ScaTrace run_sca(const ChannelSet& ch, const Topology& t, const StreamAssociation& a, double power,
                 const InterferenceLimits& theta, const ScaConfig& cfg = {});

/// CSV with columns iteration,sum_rate_bps_hz,max_violation.
void write_trace_csv(std::ostream& os, const ScaTrace& trace);

struct AssociationRun {
  StreamAssociation association;
  ScaTrace trace;
};

struct OptimizationResult {
  int dof = 0;
  std::vector<AssociationRun> runs;
  std::size_t best = 0;

  const AssociationRun& best_run() const { return runs.at(best); }
};

/// Maximum DoF, then SCA on up to association_cap DoF-optimal associations;
/// the best converged sum-rate wins (ties keep the earlier association).
/// Throws NoFeasibleStream when not even one stream is possible.
OptimizationResult optimize_scenario(const Scenario& s, const ChannelSet& ch, const ScaConfig& cfg = {});
OptimizationResult optimize_scenario(const Scenario& s, const ScaConfig& cfg = {});

}  // namespace uavcic
