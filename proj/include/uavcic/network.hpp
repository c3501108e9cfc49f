// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace uavcic {

/// GBS labels are 1-based, matching how cells are numbered in a network plan.
using GbsId = int;
using GbsSet = std::vector<GbsId>;  // kept sorted and duplicate-free
using Point3 = Eigen::Vector3d;

/// Cell layout, occupied/available partition and one-hop backhaul adjacency.
///
/// `backhaul` maps each occupied GBS to the available GBSs that can forward a
/// decoded stream to it. GBS k lives at `gbs_positions[k - 1]`.
struct Topology {
  std::vector<Point3> gbs_positions;  // meters
  GbsSet occupied;
  GbsSet available;
  std::map<GbsId, GbsSet> backhaul;
  Point3 uav_position{0.0, 0.0, 0.0};
  double cell_radius = 0.0;

  int gbs_count() const { return static_cast<int>(gbs_positions.size()); }
  const Point3& position(GbsId id) const { return gbs_positions.at(static_cast<std::size_t>(id - 1)); }
  /// Backhaul neighbours of an occupied GBS (empty when it has none).
  const GbsSet& neighbours(GbsId occupied_id) const;
  bool is_available(GbsId id) const;
  bool is_occupied(GbsId id) const;
};

/// Default 8-cell layout with cell 6 at the origin and the UAV hovering 100 m
/// above it. Occupied cells 1-3, available cells 4-8, and
/// backhaul 1:{4,5,6}, 2:{5,6,7}, 3:{6,7,8}.
///
/// Hexagonal cells of radius 200 m: cells 1, 2, 3, 5 and 7 sit in the first ring
/// around cell 6 (2 at 90 deg, 5 at 150 deg, 1 at 210 deg, 3 at 330 deg,
/// 7 at 30 deg); cells 4 and 8 sit in the second ring at 180 deg and 0 deg. With
/// this placement the backhaul sets coincide with geometric adjacency.
Topology reference_topology();

/// Coordinates used by reference_topology() for the given cell radius.
std::vector<Point3> default_layout(double cell_radius);

/// Euclidean UAV-to-GBS distances, index k-1 for GBS k.
std::vector<double> distances(const Topology& t);

/// Human-readable descriptions of every broken invariant; empty means valid.
std::vector<std::string> validate(const Topology& t);

/// Throws ConfigError listing all violations when validate() is non-empty.
void require_valid(const Topology& t);

/// Same cells and partition with every backhaul set emptied (isolated GBSs).
Topology without_backhaul(Topology t);

/// Full cooperation: every occupied GBS is connected to every available one.
Topology with_full_backhaul(Topology t);

}  // namespace uavcic
