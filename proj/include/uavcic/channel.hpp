// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uavcic/network.hpp"
#include "uavcic/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace uavcic {

struct ChannelParams {
  int antennas = 5;                  // UAV array size M
  double reference_gain_db = -60.0;  // tau0, power gain at 1 m
  double rician_factor = 5.0;        // LoS-to-scattered power ratio, linear
  double noise_psd_dbm_hz = -169.0;
  double bandwidth_hz = 10e6;
};

/// UAV-to-GBS channels. `h[k]` and `sigma2[k]` belong to GBS k+1; the received
/// amplitude of beamformer w at that GBS is h[k]^H w.
struct ChannelSet {
  std::vector<CVector> h;
  std::vector<double> sigma2;  // Watts
  ChannelParams params;

  const CVector& of(GbsId id) const { return h.at(static_cast<std::size_t>(id - 1)); }
  double noise(GbsId id) const { return sigma2.at(static_cast<std::size_t>(id - 1)); }
  int antennas() const { return params.antennas; }
};

/// Half-wavelength uniform linear array response, unit norm:
/// (1/sqrt(M)) [1, e^{i pi cos(theta)}, ..., e^{i pi (M-1) cos(theta)}].
CVector los_steering(int antennas, double theta);

/// Angle between the array axis (x) and the UAV-to-GBS direction.
double steering_angle(const Point3& uav, const Point3& gbs);

/// Noise power in Watts for a PSD in dBm/Hz over a bandwidth in Hz.
double noise_power(double psd_dbm_hz, double bandwidth_hz);

/// Rician channels for every GBS of the topology; deterministic in `seed`.
ChannelSet sample_channels(const Topology& t, const ChannelParams& params, std::uint64_t seed);

/// CSV with columns gbs_id,antenna_index,re,im (antenna_index is 0-based).
void write_channels_csv(std::ostream& os, const ChannelSet& ch);

}  // namespace uavcic
