// SPDX-License-Identifier: Apache-2.0
#include "uavcic/sca.hpp"

#include "uavcic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "uavcic/csv.hpp"

namespace uavcic {

namespace {

constexpr double kEtaSlack = 1.001;
constexpr double kMinAnchorC = 1e-12;

// Orthonormal basis stream j is confined to: the null space of every occupied
// GBS with a zero limit that cannot cancel it.
CMatrix stream_basis(const ChannelSet& ch, const DerivedSets& sets, const InterferenceLimits& theta,
                     std::size_t j) {
  std::vector<CVector> cols;
  for (const auto& [n1, streams] : sets.gamma) {
    auto it = theta.find(n1);
    if (it == theta.end() || it->second > 0.0) continue;
    if (std::find(streams.begin(), streams.end(), j) != streams.end()) cols.push_back(ch.of(n1));
  }
  if (cols.empty()) return CMatrix::Identity(ch.antennas(), ch.antennas());
  return null_space(hstack(cols, ch.antennas()));
}

// Beamformers that respect every zero limit without relying on zero forcing
// between streams: each stream's decoder centroid projected onto its basis.
std::vector<CVector> projected_matched_filter(const ChannelSet& ch, const StreamAssociation& a,
                                              const std::vector<CMatrix>& bases, double power) {
  std::vector<CVector> w(a.stream_count(), CVector::Zero(ch.antennas()));
  std::size_t live = 0;
  for (std::size_t j = 0; j < a.stream_count(); ++j)
    if (bases[j].cols() > 0) ++live;
  for (std::size_t j = 0; j < a.stream_count(); ++j) {
    if (bases[j].cols() == 0) continue;
    CVector centroid = CVector::Zero(ch.antennas());
    for (GbsId n2 : a.streams[j]) centroid += ch.of(n2);
    CVector dir = bases[j] * (bases[j].adjoint() * centroid);
    if (dir.norm() == 0.0) dir = bases[j].col(0);
    w[j] = std::sqrt(power / static_cast<double>(live)) * dir / dir.norm();
  }
  return w;
}

}  // namespace

void tighten_anchors(convex::SubproblemSpec& spec, const RVector& z) {
  const convex::Layout layout(spec);
  for (std::size_t l = 0; l < spec.links.size(); ++l) {
    auto& link = spec.links[l];
    const auto [a, b] = convex::link_amplitude(spec, z, l, link.stream);
    const double rate = z(static_cast<Eigen::Index>(layout.rate(link.stream)));
    const double eta = z(static_cast<Eigen::Index>(layout.eta(l)));
    link.anchor.a = a;
    link.anchor.b = b;
    link.anchor.c = std::max(std::sqrt(std::max(std::exp2(rate) - 1.0, 0.0) / eta), kMinAnchorC);
  }
}

ScaStart init_anchors(const ChannelSet& ch, const Topology& t, const StreamAssociation& a, double power,
                      const InterferenceLimits& theta, const ScaConfig& cfg) {
  const auto sets = derive_sets(t, a);
  const std::size_t J = a.stream_count();

  std::vector<CMatrix> bases;
  for (std::size_t j = 0; j < J; ++j) bases.push_back(stream_basis(ch, sets, theta, j));

  ScaStart start;
  const bool any_room = std::any_of(bases.begin(), bases.end(), [](const CMatrix& b) { return b.cols() > 0; });
  if (!any_room) {
    // Every stream is forced to zero: nothing to optimize.
    start.solution = evaluate(ch, t, a, std::vector<CVector>(J, CVector::Zero(ch.antennas())));
    return start;
  }
  std::vector<CVector> w0 = theorem1_feasible(t, ch.antennas(), a) ? zf_design(ch, t, a, power).w
                                                                    : projected_matched_filter(ch, a, bases, power);
  start.solution = scale_to_constraints(w0, power, theta, ch, t, a).solution;
  const double sqrt_p = std::sqrt(power);

  std::vector<std::size_t> spec_index(J, J);
  for (std::size_t j = 0; j < J; ++j) {
    if (bases[j].cols() == 0) continue;
    spec_index[j] = start.active.size();
    start.active.push_back(j);
    start.spec.bases.push_back(bases[j]);
  }

  std::vector<CVector> v;
  std::vector<double> rates;
  std::vector<double> etas;
  for (std::size_t j : start.active) {
    v.push_back(start.solution.w[j] / sqrt_p);
    rates.push_back(cfg.rate_backoff * start.solution.rates[j]);
  }
  for (std::size_t j : start.active) {
    for (GbsId n2 : a.streams[j]) {
      convex::DecoderLink link;
      link.stream = spec_index[j];
      link.channel = ch.of(n2) * (sqrt_p / std::sqrt(ch.noise(n2)));
      double interference = 0.0;
      for (std::size_t i = 0; i < J; ++i)
        if (i != j) interference += std::norm(ch.of(n2).dot(start.solution.w[i])) / ch.noise(n2);
      etas.push_back(kEtaSlack * (interference + 1.0));
      start.spec.links.push_back(std::move(link));
    }
  }
  for (const auto& [n1, streams] : sets.gamma) {
    auto it = theta.find(n1);
    if (it == theta.end() || it->second <= 0.0) continue;
    convex::InterferenceCap cap;
    for (std::size_t j : streams)
      if (spec_index[j] < J) cap.streams.push_back(spec_index[j]);
    if (cap.streams.empty()) continue;
    cap.channel = ch.of(n1) * std::sqrt(power / it->second);
    start.spec.caps.push_back(std::move(cap));
  }

  start.z = convex::pack(start.spec, v, rates, etas);
  tighten_anchors(start.spec, start.z);
  return start;
}

namespace {

void unpack(const ScaStart& st, const RVector& z, double power, std::size_t streams, int antennas,
            std::vector<CVector>& w, std::vector<double>& rates) {
  const convex::Layout layout(st.spec);
  const auto v = convex::beamformers(st.spec, z);
  w.assign(streams, CVector::Zero(antennas));
  rates.assign(streams, 0.0);
  for (std::size_t k = 0; k < st.active.size(); ++k) {
    w[st.active[k]] = std::sqrt(power) * v[k];
    rates[st.active[k]] = z(static_cast<Eigen::Index>(layout.rate(k)));
  }
}

}  // namespace

ScaTrace run_sca(const ChannelSet& ch, const Topology& t, const StreamAssociation& a, double power,
                 const InterferenceLimits& theta, const ScaConfig& cfg) {
  ScaStart st = init_anchors(ch, t, a, power, theta, cfg);
  const std::size_t J = a.stream_count();
  ScaTrace trace;

  std::vector<CVector> w;
  std::vector<double> rates;
  auto record = [&](const RVector& z) {
    unpack(st, z, power, J, ch.antennas(), w, rates);
    trace.sum_rates.push_back(convex::objective(st.spec, z));
    trace.max_violation.push_back(max_constraint_violation(ch, t, a, w, rates, power, theta));
  };

  RVector z = st.z;
  record(z);
  if (st.active.empty()) {
    trace.converged = true;
  } else {
    for (int q = 1; q <= cfg.max_iterations; ++q) {
      const auto rep = convex::solve(st.spec, z, cfg.solver);
      const double previous = trace.sum_rates.back();
      z = rep.z;
      trace.iterations = q;
      record(z);
      tighten_anchors(st.spec, z);
      if (trace.sum_rates.back() - previous < cfg.epsilon) {
        trace.converged = true;
        break;
      }
    }
    // Anchors are tight at z, so the surrogate gradients are those of the
    // original constraints.
    trace.kkt_residual = convex::stationarity_residual(st.spec, z);
  }

  unpack(st, z, power, J, ch.antennas(), w, rates);
  trace.solution = evaluate(ch, t, a, w);
  trace.rate_variables = rates;
  return trace;
}

void write_trace_csv(std::ostream& os, const ScaTrace& trace) {
  os << "iteration,sum_rate_bps_hz,max_violation\n";
  for (std::size_t q = 0; q < trace.sum_rates.size(); ++q)
    os << q << ',' << csv::num(trace.sum_rates[q]) << ',' << csv::num(trace.max_violation[q]) << '\n';
}

OptimizationResult optimize_scenario(const Scenario& s, const ChannelSet& ch, const ScaConfig& cfg) {
  OptimizationResult out;
  const auto dof = max_dof(s.topology, s.channel.antennas);
  out.dof = dof.dof;
  if (dof.dof == 0) throw NoFeasibleStream("no stream can be sent without interfering an occupied GBS");
  for (auto& assoc : enumerate_feasible(s.topology, s.channel.antennas, dof.dof, cfg.association_cap)) {
    auto trace = run_sca(ch, s.topology, assoc, s.power, s.theta, cfg);
    out.runs.push_back({std::move(assoc), std::move(trace)});
  }
  // Converged runs win over unconverged ones, then the higher sum-rate.
  auto better = [](const ScaTrace& x, const ScaTrace& y) {
    if (x.converged != y.converged) return x.converged;
    return x.final_sum_rate() > y.final_sum_rate();
  };
  for (std::size_t k = 1; k < out.runs.size(); ++k)
    if (better(out.runs[k].trace, out.runs[out.best].trace)) out.best = k;
  return out;
}

OptimizationResult optimize_scenario(const Scenario& s, const ScaConfig& cfg) {
  return optimize_scenario(s, s.sample(), cfg);
}

}  // namespace uavcic
