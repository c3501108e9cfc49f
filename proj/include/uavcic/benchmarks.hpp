// SPDX-License-Identifier: Apache-2.0
//
// Reference schemes: full cooperation (point-to-point MIMO capacity to all
// available GBSs) and cognitive beamforming (no backhaul, every occupied GBS
// protected from every stream).
#pragma once

#include "uavcic/sca.hpp"

#include <vector>

namespace uavcic {

struct CompResult {
  double capacity = 0.0;            // bps/Hz
  std::vector<double> singular_values;  // of the noise-whitened channel, descending
  std::vector<double> powers;           // per eigenmode, W
  double water_level = 0.0;
};

/// Water-filling over parallel channels with power gains `gains` (already
/// divided by the noise power) and total power `power`:
/// p_i = max(mu - 1/g_i, 0), sum p_i = power, C = sum log2(1 + p_i g_i).
CompResult water_fill(const std::vector<double>& gains, double power);

/// Capacity from the UAV to all available GBSs decoded jointly. Rows of the
/// channel matrix are whitened by each GBS's noise standard deviation.
CompResult comp_capacity(const ChannelSet& ch, const Topology& t, double power);

/// Same, from singular values of an already whitened channel.
CompResult comp_capacity(const std::vector<double>& singular_values, double power);

struct CognitiveResult {
  StreamAssociation association;  // one decoding GBS per stream
  ScaTrace trace;
};

/// Decoders for cognitive beamforming: the `streams` available GBSs whose
/// channels keep the most energy after projection away from every occupied
/// GBS's channel, strongest first.
StreamAssociation cognitive_association(const ChannelSet& ch, const Topology& t, int streams);

/// Cognitive beamforming with max(M - N1, 0) streams (capped by |N2|), run on
/// the topology stripped of backhaul so every occupied GBS constrains every
/// stream. Returns an empty association and a zero-rate trace when no stream fits.
CognitiveResult cognitive_beamforming(const Scenario& s, const ChannelSet& ch, const ScaConfig& cfg = {});

/// Cognitive beamforming with explicitly chosen single-GBS decoders.
CognitiveResult cognitive_beamforming(const Scenario& s, const ChannelSet& ch, const StreamAssociation& decoders,
                                      const ScaConfig& cfg = {});

}  // namespace uavcic
