// SPDX-License-Identifier: Apache-2.0
#include "uavcic/scenario.hpp"

#include "uavcic/units.hpp"

namespace uavcic {

Scenario reference_scenario() {
  Scenario s;
  s.topology = reference_topology();
  s.channel = ChannelParams{};
  s.power = units::dbm_to_watts(23.0);
  s.theta = uniform_limits(s.topology, units::dbm_to_watts(-60.0));
  s.seed = 1;
  return s;
}

}  // namespace uavcic
