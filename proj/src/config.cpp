// SPDX-License-Identifier: Apache-2.0
#include "uavcic/config.hpp"

#include "uavcic/errors.hpp"
#include "uavcic/units.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace uavcic {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::dof_vs_m: return "dof_vs_m";
    case ExperimentKind::convergence: return "convergence";
    case ExperimentKind::sweep_theta: return "sweep_theta";
    case ExperimentKind::sweep_power: return "sweep_power";
    case ExperimentKind::single: return "single";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
  for (auto k : {ExperimentKind::dof_vs_m, ExperimentKind::convergence, ExperimentKind::sweep_theta,
                 ExperimentKind::sweep_power, ExperimentKind::single})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown experiment kind '" + s +
                    "' (expected dof_vs_m, convergence, sweep_theta, sweep_power or single)");
}

void ExperimentConfig::validate() const {
  require_valid(scenario.topology);
  if (scenario.channel.antennas < 1) throw ConfigError("antennas must be at least 1");
  if (scenario.channel.rician_factor < 0.0) throw ConfigError("rician_factor must be nonnegative");
  if (!(scenario.channel.bandwidth_hz > 0.0)) throw ConfigError("bandwidth_mhz must be positive");
  if (!(scenario.power > 0.0)) throw ConfigError("transmit_power_dbm must be finite");
  for (const auto& [id, w] : scenario.theta) {
    if (!scenario.topology.is_occupied(id))
      throw ConfigError("interference temperature given for GBS " + std::to_string(id) + " which is not occupied");
    if (!(w >= 0.0)) throw ConfigError("interference temperature must not be NaN");
  }
  for (GbsId id : scenario.topology.occupied)
    if (!scenario.theta.count(id))
      throw ConfigError("no interference temperature for occupied GBS " + std::to_string(id));
  if (antenna_grid.empty()) throw ConfigError("experiment.antenna_grid must not be empty");
  if (theta_grid_dbm.empty()) throw ConfigError("experiment.theta_grid_dbm must not be empty");
  if (power_grid_dbm.empty()) throw ConfigError("experiment.power_grid_dbm must not be empty");
  if (seeds.empty()) throw ConfigError("experiment.seeds must not be empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    throw ConfigError("experiment.seeds must be distinct");
  for (int m : antenna_grid)
    if (m < 1) throw ConfigError("experiment.antenna_grid entries must be at least 1");
  if (!(solver.epsilon > 0.0)) throw ConfigError("solver.epsilon must be positive");
  if (solver.max_iterations < 1) throw ConfigError("solver.max_iterations must be at least 1");
  if (solver.association_cap < 1) throw ConfigError("solver.association_cap must be at least 1");

  auto check = [&](const StreamAssociation& a, const std::string& what) {
    const auto errs = uavcic::validate(scenario.topology, a);
    if (!errs.empty()) throw ConfigError(what + ": " + errs.front());
  };
  if (association) check(*association, "experiment.association");
  for (const auto& a : pinned) check(a, "experiment.pinned_associations");
  if (cognitive_decoders) {
    check(*cognitive_decoders, "experiment.cognitive_decoders");
    for (const auto& s : cognitive_decoders->streams)
      if (s.size() != 1) throw ConfigError("experiment.cognitive_decoders: each stream needs exactly one GBS");
  }
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.scenario = reference_scenario();
  for (std::uint64_t s = 1; s <= 50; ++s) c.seeds.push_back(s);
  c.pinned = {parse_association("[[4,7],[5,8],[6]]"), parse_association("[[5],[6],[7]]")};
  return c;
}

namespace {

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.line < 0) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    throw ConfigError(origin_ + ": " + msg + where(n));
  }

  void require_map(const YAML::Node& n, const std::string& path) const {
    if (!n.IsMap()) fail(n, path + " must be a mapping");
  }

  void only_keys(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> allowed) const {
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        fail(kv.first, "unknown key '" + (path.empty() ? key : path + "." + key) + "'");
    }
  }

  template <class T>
  T get(const YAML::Node& n, const std::string& path) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, path + " has the wrong type");
    }
  }

  template <class T>
  std::vector<T> list(const YAML::Node& n, const std::string& path) const {
    if (!n.IsSequence()) fail(n, path + " must be a list");
    std::vector<T> out;
    for (const auto& e : n) out.push_back(get<T>(e, path));
    return out;
  }

  StreamAssociation association(const YAML::Node& n, const std::string& path) const {
    if (n.IsScalar()) {
      try {
        return parse_association(n.as<std::string>());
      } catch (const ConfigError& e) {
        fail(n, path + ": " + e.what());
      }
    }
    if (!n.IsSequence()) fail(n, path + " must be an association such as [[4,7],[5,8],[6]]");
    StreamAssociation a;
    for (const auto& s : n) {
      auto ids = list<int>(s, path);
      std::sort(ids.begin(), ids.end());
      a.streams.push_back(std::move(ids));
    }
    return a;
  }

  Point3 point(const YAML::Node& n, const std::string& path) const {
    const auto v = list<double>(n, path);
    if (v.size() != 3) fail(n, path + " must have three coordinates");
    return {v[0], v[1], v[2]};
  }

 private:
  std::string origin_;
};

void read_scenario(const Reader& r, const YAML::Node& n, ExperimentConfig& c, std::optional<double>& theta_all,
                   std::map<GbsId, double>& theta_each) {
  r.require_map(n, "scenario");
  r.only_keys(n, "scenario",
              {"antennas", "transmit_power_dbm", "interference_temperature_dbm", "reference_gain_db",
               "rician_factor", "bandwidth_mhz", "noise_psd_dbm_hz", "seed"});
  for (const char* key : {"antennas", "transmit_power_dbm", "interference_temperature_dbm"})
    if (!n[key]) r.fail(n, std::string("missing required field 'scenario.") + key + "'");

  auto& ch = c.scenario.channel;
  ch.antennas = r.get<int>(n["antennas"], "scenario.antennas");
  c.scenario.power = units::dbm_to_watts(r.get<double>(n["transmit_power_dbm"], "scenario.transmit_power_dbm"));
  const auto th = n["interference_temperature_dbm"];
  if (th.IsMap()) {
    for (const auto& kv : th)
      theta_each[r.get<int>(kv.first, "scenario.interference_temperature_dbm key")] =
          r.get<double>(kv.second, "scenario.interference_temperature_dbm");
  } else {
    theta_all = r.get<double>(th, "scenario.interference_temperature_dbm");
  }
  if (n["reference_gain_db"]) ch.reference_gain_db = r.get<double>(n["reference_gain_db"], "scenario.reference_gain_db");
  if (n["rician_factor"]) ch.rician_factor = r.get<double>(n["rician_factor"], "scenario.rician_factor");
  if (n["bandwidth_mhz"]) ch.bandwidth_hz = units::mhz_to_hz(r.get<double>(n["bandwidth_mhz"], "scenario.bandwidth_mhz"));
  if (n["noise_psd_dbm_hz"]) ch.noise_psd_dbm_hz = r.get<double>(n["noise_psd_dbm_hz"], "scenario.noise_psd_dbm_hz");
  if (n["seed"]) c.scenario.seed = r.get<std::uint64_t>(n["seed"], "scenario.seed");
}

void read_topology(const Reader& r, const YAML::Node& n, Topology& t) {
  r.require_map(n, "topology");
  r.only_keys(n, "topology", {"cell_radius_m", "uav_position_m", "gbs_positions_m", "occupied", "available", "backhaul"});
  if (n["cell_radius_m"]) {
    t.cell_radius = r.get<double>(n["cell_radius_m"], "topology.cell_radius_m");
    if (!(t.cell_radius > 0.0)) r.fail(n["cell_radius_m"], "topology.cell_radius_m must be positive");
    if (!n["gbs_positions_m"]) t.gbs_positions = default_layout(t.cell_radius);
  }
  if (n["uav_position_m"]) t.uav_position = r.point(n["uav_position_m"], "topology.uav_position_m");
  if (n["gbs_positions_m"]) {
    const auto p = n["gbs_positions_m"];
    if (!p.IsSequence()) r.fail(p, "topology.gbs_positions_m must be a list of [x, y, z]");
    t.gbs_positions.clear();
    for (const auto& e : p) t.gbs_positions.push_back(r.point(e, "topology.gbs_positions_m"));
  }
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (n["occupied"]) t.occupied = sorted(r.list<int>(n["occupied"], "topology.occupied"));
  if (n["available"]) t.available = sorted(r.list<int>(n["available"], "topology.available"));
  if (n["backhaul"]) {
    const auto b = n["backhaul"];
    if (!b.IsMap()) r.fail(b, "topology.backhaul must map occupied GBS ids to lists of available GBS ids");
    t.backhaul.clear();
    for (const auto& kv : b)
      t.backhaul[r.get<int>(kv.first, "topology.backhaul key")] = sorted(r.list<int>(kv.second, "topology.backhaul"));
  }
}

void read_experiment(const Reader& r, const YAML::Node& n, ExperimentConfig& c) {
  r.require_map(n, "experiment");
  r.only_keys(n, "experiment",
              {"kind", "antenna_grid", "theta_grid_dbm", "power_grid_dbm", "seeds", "output_dir", "association",
               "pinned_associations", "cognitive_decoders"});
  if (n["kind"]) {
    try {
      c.kind = parse_experiment_kind(r.get<std::string>(n["kind"], "experiment.kind"));
    } catch (const ConfigError& e) {
      r.fail(n["kind"], e.what());
    }
  }
  if (n["antenna_grid"]) c.antenna_grid = r.list<int>(n["antenna_grid"], "experiment.antenna_grid");
  if (n["theta_grid_dbm"]) c.theta_grid_dbm = r.list<double>(n["theta_grid_dbm"], "experiment.theta_grid_dbm");
  if (n["power_grid_dbm"]) c.power_grid_dbm = r.list<double>(n["power_grid_dbm"], "experiment.power_grid_dbm");
  if (n["seeds"]) {
    const auto s = n["seeds"];
    if (s.IsMap()) {
      r.only_keys(s, "experiment.seeds", {"first", "count"});
      if (!s["first"] || !s["count"]) r.fail(s, "experiment.seeds needs both 'first' and 'count'");
      const auto first = r.get<std::uint64_t>(s["first"], "experiment.seeds.first");
      const auto count = r.get<std::uint64_t>(s["count"], "experiment.seeds.count");
      c.seeds.clear();
      for (std::uint64_t k = 0; k < count; ++k) c.seeds.push_back(first + k);
    } else {
      c.seeds = r.list<std::uint64_t>(s, "experiment.seeds");
    }
  }
  if (n["output_dir"]) c.output_dir = r.get<std::string>(n["output_dir"], "experiment.output_dir");
  if (n["association"] && !n["association"].IsNull())
    c.association = r.association(n["association"], "experiment.association");
  if (n["pinned_associations"]) {
    const auto p = n["pinned_associations"];
    if (!p.IsSequence()) r.fail(p, "experiment.pinned_associations must be a list");
    c.pinned.clear();
    for (const auto& e : p) c.pinned.push_back(r.association(e, "experiment.pinned_associations"));
  }
  if (n["cognitive_decoders"] && !n["cognitive_decoders"].IsNull()) {
    auto ids = r.list<int>(n["cognitive_decoders"], "experiment.cognitive_decoders");
    StreamAssociation a;
    for (int id : ids) a.streams.push_back({id});
    c.cognitive_decoders = std::move(a);
  }
}

void read_solver(const Reader& r, const YAML::Node& n, ScaConfig& s) {
  r.require_map(n, "solver");
  r.only_keys(n, "solver", {"epsilon", "max_iterations", "association_cap", "rate_backoff"});
  if (n["epsilon"]) s.epsilon = r.get<double>(n["epsilon"], "solver.epsilon");
  if (n["max_iterations"]) s.max_iterations = r.get<int>(n["max_iterations"], "solver.max_iterations");
  if (n["association_cap"]) s.association_cap = r.get<std::size_t>(n["association_cap"], "solver.association_cap");
  if (n["rate_backoff"]) s.rate_backoff = r.get<double>(n["rate_backoff"], "solver.rate_backoff");
  if (!(s.rate_backoff > 0.0 && s.rate_backoff < 1.0)) r.fail(n, "solver.rate_backoff must lie in (0, 1)");
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  const Reader r(origin);
  if (!root.IsMap()) r.fail(root, "top level must be a mapping with a 'scenario' section");
  r.only_keys(root, "", {"scenario", "topology", "experiment", "solver"});
  if (!root["scenario"]) r.fail(root, "missing required section 'scenario'");

  ExperimentConfig c = default_config();
  std::optional<double> theta_all;
  std::map<GbsId, double> theta_each;
  if (root["topology"]) {
    read_topology(r, root["topology"], c.scenario.topology);
    // The default pinned associations only make sense for the default topology.
    c.pinned.clear();
  }
  read_scenario(r, root["scenario"], c, theta_all, theta_each);
  if (root["experiment"]) read_experiment(r, root["experiment"], c);
  if (root["solver"]) read_solver(r, root["solver"], c.solver);

  c.scenario.theta.clear();
  if (theta_all) {
    c.scenario.theta = uniform_limits(c.scenario.topology, units::dbm_to_watts(*theta_all));
  } else {
    for (const auto& [id, dbm] : theta_each) c.scenario.theta[id] = units::dbm_to_watts(dbm);
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace uavcic
