// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "uavcic/association.hpp"
#include "uavcic/channel.hpp"
#include "uavcic/numerics.hpp"

#include <map>
#include <vector>

namespace uavcic {

/// Interference temperature per occupied GBS, in Watts.
using InterferenceLimits = std::map<GbsId, double>;

/// Same limit at every occupied GBS of the topology.
InterferenceLimits uniform_limits(const Topology& t, double watts);

/// Leakage below this fraction of |h||w| counts as an exact null.
inline constexpr double kZeroLeakageTol = 1e-9;

struct BeamformingSolution {
  std::vector<CVector> w;                      // sqrt(W)
  std::vector<double> rates;                   // bps/Hz, min over each stream's decoders
  std::vector<std::vector<double>> sinr;       // sinr[j][k] at streams[j][k]
  std::map<GbsId, double> residual_interference;  // after cooperative cancellation, W
  std::map<GbsId, double> total_interference;     // without any cancellation, W

  double sum_rate() const;
  double power() const;
};

/// SINRs, multicast rates and interference powers of a beamformer set.
/// Residual interference at n1 only counts streams n1 cannot cancel.
BeamformingSolution evaluate(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                             const std::vector<CVector>& w);

/// Zero-forcing design: each w_j is confined to the null space of the channels
/// of every GBS decoding another stream and of every occupied GBS in psi(j).
/// Inside that space w_j points along the projection of the mean channel of the
/// stream's decoders, and the power P is split equally between streams.
/// Throws InfeasibleAssociation when some null space is empty.
BeamformingSolution zf_design(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                              double power);

/// Channels that stream j must be orthogonal to under zero forcing, as columns.
CMatrix zf_constraint_matrix(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                             const DerivedSets& sets, std::size_t stream);

struct ScaledSolution {
  BeamformingSolution solution;
  double alpha = 1.0;
};

/// Uniform amplitude scaling so that transmit power and every residual
/// interference stay at or below 0.99 of their limits. Inputs already inside
/// those margins are returned unchanged (alpha = 1). A zero limit is met only
/// by leakage below kZeroLeakageTol, otherwise InfeasibleAssociation is thrown.
/// Throws ZeroSolution when every beamformer is zero.
ScaledSolution scale_to_constraints(const std::vector<CVector>& w, double power, const InterferenceLimits& theta,
                                    const ChannelSet& ch, const Topology& t, const StreamAssociation& a);

/// Largest scaled violation of the power, interference and rate constraints for
/// beamformers `w` claiming rates `rates`. Power and interference are relative
/// to their limits (a zero limit is measured against the interference of the
/// full power budget); rate violations are in bps/Hz. Zero or negative means
/// feasible.
double max_constraint_violation(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                                const std::vector<CVector>& w, const std::vector<double>& rates, double power,
                                const InterferenceLimits& theta);

}  // namespace uavcic
