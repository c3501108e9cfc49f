// SPDX-License-Identifier: Apache-2.0
#include "uavcic/network.hpp"

#include "uavcic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace uavcic {

const GbsSet& Topology::neighbours(GbsId occupied_id) const {
  static const GbsSet kEmpty;
  auto it = backhaul.find(occupied_id);
  return it == backhaul.end() ? kEmpty : it->second;
}

bool Topology::is_available(GbsId id) const {
  return std::binary_search(available.begin(), available.end(), id);
}

bool Topology::is_occupied(GbsId id) const {
  return std::binary_search(occupied.begin(), occupied.end(), id);
}

std::vector<Point3> default_layout(double cell_radius) {
  const double isd = std::sqrt(3.0) * cell_radius;  // inter-site distance
  auto ring1 = [isd](double deg) {
    const double r = deg * std::numbers::pi / 180.0;
    return Point3(isd * std::cos(r), isd * std::sin(r), 0.0);
  };
  std::vector<Point3> p(8);
  p[0] = ring1(210.0);
  p[1] = ring1(90.0);
  p[2] = ring1(330.0);
  p[3] = ring1(210.0) + ring1(150.0);  // second ring, 180 deg
  p[4] = ring1(150.0);
  p[5] = Point3::Zero();
  p[6] = ring1(30.0);
  p[7] = ring1(330.0) + ring1(30.0);  // second ring, 0 deg
  return p;
}

Topology reference_topology() {
  Topology t;
  t.cell_radius = 200.0;
  t.gbs_positions = default_layout(t.cell_radius);
  t.occupied = {1, 2, 3};
  t.available = {4, 5, 6, 7, 8};
  t.backhaul = {{1, {4, 5, 6}}, {2, {5, 6, 7}}, {3, {6, 7, 8}}};
  t.uav_position = t.position(6) + Point3(0.0, 0.0, 100.0);
  return t;
}

std::vector<double> distances(const Topology& t) {
  std::vector<double> d;
  d.reserve(t.gbs_positions.size());
  for (const auto& p : t.gbs_positions) d.push_back((t.uav_position - p).norm());
  return d;
}

std::vector<std::string> validate(const Topology& t) {
  std::vector<std::string> out;
  const int n = t.gbs_count();
  if (n == 0) out.emplace_back("no GBS positions");
  if (!(t.cell_radius > 0.0) || !std::isfinite(t.cell_radius)) out.emplace_back("cell radius must be positive");
  if (!t.uav_position.allFinite()) out.emplace_back("UAV position is not finite");
  for (int k = 0; k < n; ++k)
    if (!t.gbs_positions[static_cast<std::size_t>(k)].allFinite())
      out.push_back("position of GBS " + std::to_string(k + 1) + " is not finite");

  auto check_set = [&](const GbsSet& s, const char* name) {
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      out.push_back(std::string(name) + " set must be sorted without duplicates");
    for (GbsId id : s)
      if (id < 1 || id > n) out.push_back(std::string(name) + " set references unknown GBS " + std::to_string(id));
  };
  check_set(t.occupied, "occupied");
  check_set(t.available, "available");

  std::set<GbsId> seen;
  for (GbsId id : t.occupied)
    if (t.is_available(id)) out.push_back("GBS " + std::to_string(id) + " is both occupied and available");
  seen.insert(t.occupied.begin(), t.occupied.end());
  seen.insert(t.available.begin(), t.available.end());
  for (int k = 1; k <= n; ++k)
    if (!seen.contains(k)) out.push_back("GBS " + std::to_string(k) + " is neither occupied nor available");

  for (const auto& [src, targets] : t.backhaul) {
    if (!t.is_occupied(src)) out.push_back("backhaul source " + std::to_string(src) + " is not an occupied GBS");
    for (GbsId id : targets)
      if (!t.is_available(id))
        out.push_back("backhaul target not available: " + std::to_string(id) + " (from " + std::to_string(src) + ")");
  }
  return out;
}

void require_valid(const Topology& t) {
  const auto v = validate(t);
  if (v.empty()) return;
  std::string msg = "invalid topology:";
  for (const auto& s : v) msg += "\n  " + s;
  throw ConfigError(msg);
}

Topology without_backhaul(Topology t) {
  t.backhaul.clear();
  return t;
}

Topology with_full_backhaul(Topology t) {
  t.backhaul.clear();
  for (GbsId n1 : t.occupied) t.backhaul[n1] = t.available;
  return t;
}

}  // namespace uavcic
