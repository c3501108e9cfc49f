// SPDX-License-Identifier: Apache-2.0
#include "uavcic/experiments.hpp"

#include "uavcic/csv.hpp"
#include "uavcic/errors.hpp"
#include "uavcic/units.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace uavcic {

std::vector<DofRow> run_dof_vs_m(const ExperimentConfig& cfg) {
  const Topology& t = cfg.scenario.topology;
  const int n1 = static_cast<int>(t.occupied.size());
  const int n2 = static_cast<int>(t.available.size());
  std::vector<DofRow> rows;
  for (int m : cfg.antenna_grid)
    rows.push_back({m, max_dof(t, m).dof, comp_dof(m, n2), isolated_dof(m, n1, n2)});
  return rows;
}

void write_dof_csv(std::ostream& os, const std::vector<DofRow>& rows) {
  os << "antennas,coop_dof,comp_dof,cognitive_dof\n";
  for (const auto& r : rows) os << r.antennas << ',' << r.coop << ',' << r.comp << ',' << r.cognitive << '\n';
}

StreamAssociation convergence_association(const ExperimentConfig& cfg) {
  if (cfg.association) return *cfg.association;
  if (!cfg.pinned.empty()) return cfg.pinned.front();
  const auto dof = max_dof(cfg.scenario.topology, cfg.scenario.channel.antennas);
  if (!dof.witness) throw NoFeasibleStream("no stream can be sent without interfering an occupied GBS");
  return *dof.witness;
}

ScaTrace run_convergence(const ExperimentConfig& cfg) {
  const Scenario& s = cfg.scenario;
  return run_sca(s.sample(), s.topology, convergence_association(cfg), s.power, s.theta, cfg.solver);
}

const char* axis_column(SweepAxis axis) { return axis == SweepAxis::theta ? "theta_dbm" : "power_dbm"; }

Scenario scenario_at(const ExperimentConfig& cfg, SweepAxis axis, double x, std::uint64_t seed) {
  Scenario s = cfg.scenario;
  s.seed = seed;
  if (axis == SweepAxis::theta)
    s.theta = uniform_limits(s.topology, units::dbm_to_watts(x));
  else
    s.power = units::dbm_to_watts(x);
  return s;
}

double SweepResult::mean(const std::string& scheme, double x) const {
  std::size_t k = 0;
  while (k < schemes.size() && schemes[k] != scheme) ++k;
  if (k == schemes.size()) throw std::out_of_range("no scheme '" + scheme + "' in sweep");
  for (const auto& row : summary)
    if (row.x == x) return row.mean[k];
  throw std::out_of_range("grid point not in sweep");
}

SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const SweepSchemes& which) {
  SweepResult r;
  r.axis = axis;
  if (which.pinned)
    for (std::size_t k = 0; k < cfg.pinned.size(); ++k) r.schemes.push_back("pinned" + std::to_string(k + 1));
  if (which.best) r.schemes.push_back("coop_best");
  if (which.comp) r.schemes.push_back("comp");
  if (which.cognitive) r.schemes.push_back("cognitive");

  const auto& grid = axis == SweepAxis::theta ? cfg.theta_grid_dbm : cfg.power_grid_dbm;
  for (double x : grid) {
    std::map<std::string, std::vector<double>> values;
    for (std::uint64_t seed : cfg.seeds) {
      const Scenario s = scenario_at(cfg, axis, x, seed);
      const ChannelSet ch = s.sample();
      auto add = [&](std::string scheme, StreamAssociation a, const ScaTrace& tr) {
        values[scheme].push_back(tr.final_sum_rate());
        r.samples.push_back({x, seed, std::move(scheme), std::move(a), tr.final_sum_rate(), tr.converged, tr.solution});
      };
      if (which.pinned)
        for (std::size_t k = 0; k < cfg.pinned.size(); ++k)
          add("pinned" + std::to_string(k + 1), cfg.pinned[k],
              run_sca(ch, s.topology, cfg.pinned[k], s.power, s.theta, cfg.solver));
      if (which.best) {
        const auto opt = optimize_scenario(s, ch, cfg.solver);
        add("coop_best", opt.best_run().association, opt.best_run().trace);
      }
      if (which.comp) {
        const double c = comp_capacity(ch, s.topology, s.power).capacity;
        values["comp"].push_back(c);
        r.samples.push_back({x, seed, "comp", {}, c, true, {}});
      }
      if (which.cognitive) {
        const auto cog = cfg.cognitive_decoders ? cognitive_beamforming(s, ch, *cfg.cognitive_decoders, cfg.solver)
                                                : cognitive_beamforming(s, ch, cfg.solver);
        add("cognitive", cog.association, cog.trace);
      }
    }
    SweepSummaryRow row;
    row.x = x;
    for (const auto& name : r.schemes) {
      const auto& v = values[name];
      double m = 0.0;
      for (double e : v) m += e;
      m /= static_cast<double>(v.size());
      double var = 0.0;
      for (double e : v) var += (e - m) * (e - m);
      row.mean.push_back(m);
      row.stddev.push_back(v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0);
    }
    r.summary.push_back(std::move(row));
  }
  return r;
}

SweepResult run_sweep_theta(const ExperimentConfig& cfg, const SweepSchemes& schemes) {
  return run_sweep(cfg, SweepAxis::theta, schemes);
}

SweepResult run_sweep_power(const ExperimentConfig& cfg, const SweepSchemes& schemes) {
  return run_sweep(cfg, SweepAxis::power, schemes);
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << axis_column(r.axis);
  for (const auto& s : r.schemes) os << ',' << s << "_mean," << s << "_std";
  os << '\n';
  for (const auto& row : r.summary) {
    os << csv::num(row.x);
    for (std::size_t k = 0; k < r.schemes.size(); ++k) os << ',' << csv::num(row.mean[k]) << ',' << csv::num(row.stddev[k]);
    os << '\n';
  }
}

void write_samples_csv(std::ostream& os, const SweepResult& r) {
  os << axis_column(r.axis) << ",seed,scheme,association,sum_rate_bps_hz,converged\n";
  for (const auto& s : r.samples)
    os << csv::num(s.x) << ',' << s.seed << ',' << s.scheme << ',' << association_token(s.association) << ','
       << csv::num(s.sum_rate) << ',' << (s.converged ? 1 : 0) << '\n';
}

void write_beamformers_csv(std::ostream& os, SweepAxis axis, const std::vector<SweepSample>& samples) {
  os << axis_column(axis) << ",seed,scheme,association,stream,rate_bps_hz,antenna_index,re,im\n";
  for (const auto& s : samples) {
    const auto& w = s.solution.w;
    for (std::size_t j = 0; j < w.size(); ++j)
      for (Eigen::Index m = 0; m < w[j].size(); ++m)
        os << csv::num(s.x) << ',' << s.seed << ',' << s.scheme << ',' << association_token(s.association) << ','
           << j << ',' << csv::num(s.solution.rates[j]) << ',' << m << ',' << csv::num(w[j](m).real()) << ','
           << csv::num(w[j](m).imag()) << '\n';
  }
}

std::string association_token(const StreamAssociation& a) {
  std::string out;
  for (std::size_t j = 0; j < a.streams.size(); ++j) {
    if (j) out += '|';
    for (std::size_t k = 0; k < a.streams[j].size(); ++k) {
      if (k) out += '+';
      out += std::to_string(a.streams[j][k]);
    }
  }
  return out;
}

StreamAssociation parse_association_token(const std::string& token) {
  StreamAssociation a;
  if (token.empty()) return a;
  try {
    for (const auto& stream : csv::split(token, '|')) {
      GbsSet s;
      for (const auto& id : csv::split(stream, '+')) s.push_back(std::stoi(id));
      std::sort(s.begin(), s.end());
      a.streams.push_back(std::move(s));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad association token '" + token + "'");
  }
  return a;
}

Revalidation revalidate_beamformers(const ExperimentConfig& cfg, SweepAxis axis, std::istream& in) {
  const auto table = csv::read(in);
  const auto cx = table.column(axis_column(axis)), cseed = table.column("seed"), cscheme = table.column("scheme"),
             cassoc = table.column("association"), cstream = table.column("stream"),
             crate = table.column("rate_bps_hz"), cant = table.column("antenna_index"), cre = table.column("re"),
             cim = table.column("im");

  struct Entry {
    StreamAssociation a;
    std::vector<CVector> w;
    std::vector<double> rates;
  };
  // Keyed by the exact text so grid values round-trip without rounding.
  std::map<std::tuple<std::string, std::string, std::string>, Entry> groups;
  std::vector<std::tuple<std::string, std::string, std::string>> order;
  const int m = cfg.scenario.channel.antennas;
  for (const auto& row : table.rows) {
    const auto key = std::make_tuple(row[cx], row[cseed], row[cscheme]);
    auto [it, fresh] = groups.try_emplace(key);
    Entry& e = it->second;
    if (fresh) {
      order.push_back(key);
      e.a = parse_association_token(row[cassoc]);
      e.w.assign(e.a.stream_count(), CVector::Zero(m));
      e.rates.assign(e.a.stream_count(), 0.0);
    }
    const auto j = std::stoul(row[cstream]);
    const auto k = std::stol(row[cant]);
    if (j >= e.w.size() || k < 0 || k >= m) throw std::runtime_error("beamformer row out of range");
    e.w[j](k) = Complex(std::stod(row[cre]), std::stod(row[cim]));
    e.rates[j] = std::stod(row[crate]);
  }

  Revalidation out;
  for (const auto& key : order) {
    const auto& [xs, seeds, scheme] = key;
    const Entry& e = groups.at(key);
    const Scenario s = scenario_at(cfg, axis, std::stod(xs), std::stoull(seeds));
    const Topology t = scheme == "cognitive" ? without_backhaul(s.topology) : s.topology;
    const double v = max_constraint_violation(s.sample(), t, e.a, e.w, e.rates, s.power, s.theta);
    out.max_violation = out.solutions ? std::max(out.max_violation, v) : v;
    ++out.solutions;
  }
  return out;
}

OptimizeOutcome run_optimize(const ExperimentConfig& cfg) {
  const Scenario& s = cfg.scenario;
  const ChannelSet ch = s.sample();
  OptimizeOutcome o;
  if (cfg.association) {
    o.result.dof = max_dof(s.topology, s.channel.antennas).dof;
    o.result.runs.push_back({*cfg.association, run_sca(ch, s.topology, *cfg.association, s.power, s.theta, cfg.solver)});
  } else {
    o.result = optimize_scenario(s, ch, cfg.solver);
  }
  o.comp = comp_capacity(ch, s.topology, s.power);
  o.cognitive = cfg.cognitive_decoders ? cognitive_beamforming(s, ch, *cfg.cognitive_decoders, cfg.solver)
                                       : cognitive_beamforming(s, ch, cfg.solver);
  return o;
}

void write_optimize_csv(std::ostream& os, const OptimizeOutcome& o) {
  os << "association,sum_rate_bps_hz,converged,iterations,kkt_residual,best\n";
  for (std::size_t k = 0; k < o.result.runs.size(); ++k) {
    const auto& r = o.result.runs[k];
    os << association_token(r.association) << ',' << csv::num(r.trace.final_sum_rate()) << ','
       << (r.trace.converged ? 1 : 0) << ',' << r.trace.iterations << ',' << csv::num(r.trace.kkt_residual) << ','
       << (k == o.result.best ? 1 : 0) << '\n';
  }
}

}  // namespace uavcic
