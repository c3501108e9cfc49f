// SPDX-License-Identifier: Apache-2.0
//
// Stream-to-GBS association and the combinatorial degrees-of-freedom search.
//
// A stream association assigns each of J data streams a nonempty set of
// available GBSs that decode it; the sets are pairwise disjoint. For an
// occupied GBS n1 and stream j:
//
//   omega(n1, j) = backhaul(n1) ∩ streams[j]      GBSs that can forward s_j to n1
//   gamma(n1)    = { j : omega(n1, j) empty }      streams n1 cannot cancel
//   psi(j)       = { n1 : omega(n1, j) empty }     occupied GBSs stream j must avoid
//
// A DoF of J is reachable with a given association iff, for every stream j,
//   |psi(j)| + sum_{i != j} |streams[i]| < M.
#pragma once

#include "uavcic/network.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uavcic {

/// Streams are 0-based positions; their members are 1-based GBS labels.
struct StreamAssociation {
  std::vector<GbsSet> streams;

  std::size_t stream_count() const { return streams.size(); }
  std::size_t gbs_count() const;
  /// Stream decoded at `id`, if any.
  std::optional<std::size_t> stream_of(GbsId id) const;

  friend bool operator==(const StreamAssociation&, const StreamAssociation&) = default;
};

/// Violations of the nonempty/disjoint/available rules; empty means valid.
std::vector<std::string> validate(const Topology& t, const StreamAssociation& a);

/// Parse a literal such as "[[4,7],[5,8],[6]]". Member sets are sorted.
StreamAssociation parse_association(std::string_view literal);
std::string format_association(const StreamAssociation& a);

struct DerivedSets {
  std::vector<GbsSet> psi;                                         // per stream
  std::map<std::pair<GbsId, std::size_t>, GbsSet> omega;           // (n1, j)
  std::map<GbsId, std::vector<std::size_t>> gamma;                 // per occupied GBS
};

DerivedSets derive_sets(const Topology& t, const StreamAssociation& a);

/// Checks the per-stream counting condition for every stream.
bool theorem1_feasible(const Topology& t, int antennas, const StreamAssociation& a);

struct DofResult {
  int dof = 0;                                  // 0 when not even one stream fits
  std::optional<StreamAssociation> witness;
};

/// Largest feasible stream count, searched downward from min(M, |N2|).
DofResult max_dof(const Topology& t, int antennas);

/// Default bound on how many associations enumerate_feasible returns.
inline constexpr std::size_t kDefaultAssociationCap = 64;

/// Up to `cap` distinct feasible associations with exactly `streams` streams.
///
/// Each available GBS (ascending) is labelled "unused" or with a stream index,
/// where a new stream index may only be opened after all smaller ones; these
/// labellings are visited in lexicographic order (unused < stream 0 < ...).
/// Streams therefore appear sorted by their smallest member, and every
/// association up to stream relabelling is produced exactly once.
std::vector<StreamAssociation> enumerate_feasible(const Topology& t, int antennas, int streams,
                                                  std::size_t cap = kDefaultAssociationCap);

/// DoF with full cooperation (every occupied GBS backhauled to every available one).
int comp_dof(int antennas, int available_count);

/// DoF without any backhaul (cognitive beamforming / uplink NOMA).
int isolated_dof(int antennas, int occupied_count, int available_count);

}  // namespace uavcic
