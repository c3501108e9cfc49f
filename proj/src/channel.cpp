// SPDX-License-Identifier: Apache-2.0
#include "uavcic/channel.hpp"

#include "uavcic/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "uavcic/csv.hpp"

namespace uavcic {

CVector los_steering(int antennas, double theta) {
  if (antennas < 1) throw std::invalid_argument("antenna count must be at least 1");
  const double phase = std::numbers::pi * std::cos(theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
  CVector a(antennas);
  for (int m = 0; m < antennas; ++m) a(m) = scale * std::polar(1.0, phase * m);
  return a;
}

double steering_angle(const Point3& uav, const Point3& gbs) {
  const Point3 dir = gbs - uav;
  const double n = dir.norm();
  if (n == 0.0) return std::numbers::pi / 2.0;
  return std::acos(std::clamp(dir.x() / n, -1.0, 1.0));
}

double noise_power(double psd_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  return units::dbm_to_watts(psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

ChannelSet sample_channels(const Topology& t, const ChannelParams& params, std::uint64_t seed) {
  if (params.antennas < 1) throw std::invalid_argument("antenna count must be at least 1");
  if (!(params.rician_factor >= 0.0)) throw std::invalid_argument("Rician factor must be nonnegative");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  const double tau0 = units::db_to_linear(params.reference_gain_db);
  const double lambda = params.rician_factor;
  const double los_w = std::sqrt(lambda / (lambda + 1.0));
  const double nlos_w = std::sqrt(1.0 / (lambda + 1.0));
  const double sigma2 = noise_power(params.noise_psd_dbm_hz, params.bandwidth_hz);

  ChannelSet out;
  out.params = params;
  const auto d = distances(t);
  for (int k = 0; k < t.gbs_count(); ++k) {
    const auto& pos = t.gbs_positions[static_cast<std::size_t>(k)];
    const CVector los = los_steering(params.antennas, steering_angle(t.uav_position, pos));
    CVector scatter(params.antennas);
    for (int m = 0; m < params.antennas; ++m) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      scatter(m) = Complex(re, im);
    }
    const double amp = std::sqrt(tau0) / d[static_cast<std::size_t>(k)];
    out.h.push_back(amp * (los_w * los + nlos_w * scatter));
    out.sigma2.push_back(sigma2);
  }
  return out;
}

void write_channels_csv(std::ostream& os, const ChannelSet& ch) {
  os << "gbs_id,antenna_index,re,im\n";
  for (std::size_t k = 0; k < ch.h.size(); ++k)
    for (Eigen::Index m = 0; m < ch.h[k].size(); ++m)
      os << (k + 1) << ',' << m << ',' << csv::num(ch.h[k](m).real()) << ',' << csv::num(ch.h[k](m).imag()) << '\n';
}

}  // namespace uavcic
