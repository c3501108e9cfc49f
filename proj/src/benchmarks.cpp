// SPDX-License-Identifier: Apache-2.0
#include "uavcic/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavcic {

CompResult water_fill(const std::vector<double>& gains, double power) {
  if (power < 0.0) throw std::invalid_argument("power must be nonnegative");
  CompResult out;
  out.powers.assign(gains.size(), 0.0);

  std::vector<std::size_t> order(gains.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return gains[x] > gains[y]; });

  // Largest k such that the water level over the k strongest modes clears 1/g_k.
  double level = 0.0;
  std::size_t active = 0;
  double inv_sum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double g = gains[order[k]];
    if (!(g > 0.0)) break;
    inv_sum += 1.0 / g;
    const double mu = (power + inv_sum) / static_cast<double>(k + 1);
    if (mu <= 1.0 / g) break;
    level = mu;
    active = k + 1;
  }
  out.water_level = level;
  for (std::size_t k = 0; k < active; ++k) {
    const std::size_t i = order[k];
    out.powers[i] = std::max(level - 1.0 / gains[i], 0.0);
    out.capacity += std::log2(1.0 + out.powers[i] * gains[i]);
  }
  return out;
}

CompResult comp_capacity(const std::vector<double>& singular_values, double power) {
  std::vector<double> gains;
  for (double s : singular_values) gains.push_back(s * s);
  auto out = water_fill(gains, power);
  out.singular_values = singular_values;
  return out;
}

CompResult comp_capacity(const ChannelSet& ch, const Topology& t, double power) {
  CMatrix h(static_cast<Eigen::Index>(t.available.size()), ch.antennas());
  for (std::size_t r = 0; r < t.available.size(); ++r) {
    const GbsId n2 = t.available[r];
    h.row(static_cast<Eigen::Index>(r)) = ch.of(n2).adjoint() / std::sqrt(ch.noise(n2));
  }
  const auto dec = svd(h);
  std::vector<double> s(dec.singular_values.data(), dec.singular_values.data() + dec.singular_values.size());
  return comp_capacity(s, power);
}

StreamAssociation cognitive_association(const ChannelSet& ch, const Topology& t, int streams) {
  std::vector<CVector> occ;
  for (GbsId n1 : t.occupied) occ.push_back(ch.of(n1));
  const CMatrix basis = null_space(hstack(occ, ch.antennas()));

  std::vector<std::pair<double, GbsId>> ranked;
  for (GbsId n2 : t.available) ranked.emplace_back((basis.adjoint() * ch.of(n2)).norm(), n2);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  StreamAssociation a;
  for (int j = 0; j < streams && j < static_cast<int>(ranked.size()); ++j)
    a.streams.push_back({ranked[static_cast<std::size_t>(j)].second});
  return a;
}

CognitiveResult cognitive_beamforming(const Scenario& s, const ChannelSet& ch, const ScaConfig& cfg) {
  const Topology isolated = without_backhaul(s.topology);
  const int streams = isolated_dof(ch.antennas(), static_cast<int>(isolated.occupied.size()),
                                   static_cast<int>(isolated.available.size()));
  CognitiveResult out;
  if (streams == 0) {
    out.trace.sum_rates = {0.0};
    out.trace.max_violation = {0.0};
    out.trace.converged = true;
    return out;
  }
  return cognitive_beamforming(s, ch, cognitive_association(ch, isolated, streams), cfg);
}

CognitiveResult cognitive_beamforming(const Scenario& s, const ChannelSet& ch, const StreamAssociation& decoders,
                                      const ScaConfig& cfg) {
  CognitiveResult out;
  out.association = decoders;
  out.trace = run_sca(ch, without_backhaul(s.topology), decoders, s.power, s.theta, cfg);
  return out;
}

}  // namespace uavcic
