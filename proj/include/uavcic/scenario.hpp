// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uavcic/beamforming.hpp"
#include "uavcic/channel.hpp"
#include "uavcic/network.hpp"

#include <cstdint>

namespace uavcic {

/// Everything needed to draw channels and pose the sum-rate problem.
/// Power and interference limits are linear (Watts); configs carry dBm.
struct Scenario {
  Topology topology;
  ChannelParams channel;
  double power = 0.2;         // W
  InterferenceLimits theta;   // W per occupied GBS
  std::uint64_t seed = 1;

  ChannelSet sample() const { return sample_channels(topology, channel, seed); }
};

/// Reference scenario: reference_topology(), M = 5, lambda = 5,
/// 10 MHz, -169 dBm/Hz, 23 dBm transmit power and -60 dBm at every occupied GBS.
Scenario reference_scenario();

}  // namespace uavcic
