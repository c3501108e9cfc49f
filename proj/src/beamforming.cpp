// SPDX-License-Identifier: Apache-2.0
#include "uavcic/beamforming.hpp"

#include "uavcic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uavcic {

InterferenceLimits uniform_limits(const Topology& t, double watts) {
  InterferenceLimits out;
  for (GbsId n1 : t.occupied) out[n1] = watts;
  return out;
}

double BeamformingSolution::sum_rate() const { return std::accumulate(rates.begin(), rates.end(), 0.0); }

double BeamformingSolution::power() const {
  double p = 0.0;
  for (const auto& v : w) p += v.squaredNorm();
  return p;
}

BeamformingSolution evaluate(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                             const std::vector<CVector>& w) {
  const std::size_t streams = a.stream_count();
  if (w.size() != streams) throw std::invalid_argument("one beamformer per stream is required");

  BeamformingSolution out;
  out.w = w;
  out.rates.assign(streams, 0.0);
  out.sinr.resize(streams);
  for (std::size_t j = 0; j < streams; ++j) {
    double worst = std::numeric_limits<double>::infinity();
    for (GbsId n2 : a.streams[j]) {
      const CVector& h = ch.of(n2);
      double interference = 0.0;
      for (std::size_t i = 0; i < streams; ++i)
        if (i != j) interference += std::norm(h.dot(w[i]));
      const double gamma = std::norm(h.dot(w[j])) / (interference + ch.noise(n2));
      out.sinr[j].push_back(gamma);
      worst = std::min(worst, gamma);
    }
    out.rates[j] = a.streams[j].empty() ? 0.0 : std::log2(1.0 + worst);
  }

  const auto sets = derive_sets(t, a);
  for (GbsId n1 : t.occupied) {
    const CVector& h = ch.of(n1);
    double total = 0.0;
    for (std::size_t j = 0; j < streams; ++j) total += std::norm(h.dot(w[j]));
    double residual = 0.0;
    for (std::size_t j : sets.gamma.at(n1)) residual += std::norm(h.dot(w[j]));
    out.total_interference[n1] = total;
    out.residual_interference[n1] = residual;
  }
  return out;
}

CMatrix zf_constraint_matrix(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                             const DerivedSets& sets, std::size_t stream) {
  (void)t;
  std::vector<CVector> cols;
  for (std::size_t i = 0; i < a.stream_count(); ++i)
    if (i != stream)
      for (GbsId n2 : a.streams[i]) cols.push_back(ch.of(n2));
  for (GbsId n1 : sets.psi[stream]) cols.push_back(ch.of(n1));
  return hstack(cols, ch.antennas());
}

BeamformingSolution zf_design(const ChannelSet& ch, const Topology& t, const StreamAssociation& a, double power) {
  const std::size_t streams = a.stream_count();
  const auto sets = derive_sets(t, a);
  const double per_stream = streams ? power / static_cast<double>(streams) : 0.0;

  std::vector<CVector> w;
  for (std::size_t j = 0; j < streams; ++j) {
    const CMatrix basis = null_space(zf_constraint_matrix(ch, t, a, sets, j));
    if (basis.cols() == 0)
      throw InfeasibleAssociation("stream " + std::to_string(j + 1) + " of " + format_association(a) +
                                  " has no zero-forcing direction");

    CVector centroid = CVector::Zero(ch.antennas());
    for (GbsId n2 : a.streams[j]) centroid += ch.of(n2);
    centroid /= static_cast<double>(std::max<std::size_t>(a.streams[j].size(), 1));

    CVector dir = basis * (basis.adjoint() * centroid);
    if (dir.norm() <= 1e-12 * centroid.norm()) {
      // Decoder channels cancel on average; fall back to the best single decoder.
      dir = basis.col(0);
      double best = 0.0;
      for (GbsId n2 : a.streams[j]) {
        CVector p = basis * (basis.adjoint() * ch.of(n2));
        if (p.norm() > best) {
          best = p.norm();
          dir = p;
        }
      }
    }
    w.push_back(std::sqrt(per_stream) * dir / dir.norm());
  }
  return evaluate(ch, t, a, w);
}

namespace {

bool all_zero(const std::vector<CVector>& w) {
  return std::all_of(w.begin(), w.end(), [](const CVector& v) { return v.squaredNorm() == 0.0; });
}

// Interference treated as an exact null at a zero-limit GBS.
double zero_floor(const CVector& h, double power) {
  return kZeroLeakageTol * kZeroLeakageTol * h.squaredNorm() * power;
}

}  // namespace

ScaledSolution scale_to_constraints(const std::vector<CVector>& w, double power, const InterferenceLimits& theta,
                                    const ChannelSet& ch, const Topology& t, const StreamAssociation& a) {
  if (all_zero(w)) throw ZeroSolution("all beamformers are zero");
  constexpr double kMargin = 0.99;

  auto current = evaluate(ch, t, a, w);
  double alpha2 = 1.0;
  const double p = current.power();
  if (p > kMargin * power) alpha2 = std::min(alpha2, kMargin * power / p);
  for (const auto& [n1, limit] : theta) {
    const double residual = current.residual_interference.at(n1);
    if (limit <= 0.0) {
      if (residual > zero_floor(ch.of(n1), p))
        throw InfeasibleAssociation("nonzero leakage at GBS " + std::to_string(n1) +
                                    " under a zero interference temperature");
      continue;
    }
    if (residual > kMargin * limit) alpha2 = std::min(alpha2, kMargin * limit / residual);
  }

  ScaledSolution out;
  out.alpha = std::sqrt(alpha2);
  if (alpha2 == 1.0) {
    out.solution = std::move(current);
    return out;
  }
  std::vector<CVector> scaled = w;
  for (auto& v : scaled) v *= out.alpha;
  out.solution = evaluate(ch, t, a, scaled);
  return out;
}

double max_constraint_violation(const ChannelSet& ch, const Topology& t, const StreamAssociation& a,
                                const std::vector<CVector>& w, const std::vector<double>& rates, double power,
                                const InterferenceLimits& theta) {
  const auto ev = evaluate(ch, t, a, w);
  double worst = (ev.power() - power) / power;
  for (const auto& [n1, limit] : theta) {
    const double residual = ev.residual_interference.at(n1);
    const double scale = limit > 0.0 ? limit : ch.of(n1).squaredNorm() * power;
    worst = std::max(worst, (residual - limit) / scale);
  }
  for (std::size_t j = 0; j < rates.size() && j < ev.rates.size(); ++j)
    worst = std::max(worst, rates[j] - ev.rates[j]);
  return worst;
}

}  // namespace uavcic
