// SPDX-License-Identifier: Apache-2.0
//
// uavcic: batch experiments for multi-beam UAV uplink with cooperative
// interference cancellation. Every subcommand writes CSV files into --out.
#include "uavcic/errors.hpp"
#include "uavcic/experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace uavcic;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string assoc;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "YAML experiment configuration")->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "Use this single seed instead of the configured ones");
  sub->add_option("--out", c.out, "Output directory (overrides experiment.output_dir)");
  sub->add_option("--assoc", c.assoc, "Stream association literal, e.g. [[4,7],[5,8],[6]]");
}

ExperimentConfig resolve(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? default_config() : load_config(c.config);
  if (c.seed) {
    cfg.scenario.seed = *c.seed;
    cfg.seeds = {*c.seed};
  }
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (!c.assoc.empty()) {
    cfg.association = parse_association(c.assoc);
    cfg.pinned = {*cfg.association};
  }
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  const fs::path p = fs::path(cfg.output_dir) / name;
  std::ofstream os(p);
  if (!os) throw Error("cannot write " + p.string());
  std::cout << "wrote " << p.string() << '\n';
  return os;
}

void write_sweep(const ExperimentConfig& cfg, const SweepResult& r, const std::string& stem) {
  {
    auto os = open_out(cfg, stem + ".csv");
    write_sweep_csv(os, r);
  }
  {
    auto os = open_out(cfg, stem + "_samples.csv");
    write_samples_csv(os, r);
  }
  auto os = open_out(cfg, stem + "_beamformers.csv");
  write_beamformers_csv(os, r.axis, r.samples);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-beam UAV uplink with cooperative interference cancellation"};
  app.require_subcommand(1);
  Common common;

  auto* dof = app.add_subcommand("dof", "Maximum DoF versus UAV antenna count");
  auto* conv = app.add_subcommand("convergence", "Per-iteration sum-rate of one SCA run");
  auto* theta = app.add_subcommand("sweep-theta", "Sum-rate versus interference temperature");
  auto* power = app.add_subcommand("sweep-power", "Sum-rate versus transmit power");
  auto* opt = app.add_subcommand("optimize", "Best DoF-optimal association and beamformers for one channel draw");
  for (auto* sub : {dof, conv, theta, power, opt}) add_common(sub, common);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = resolve(common);
    if (dof->parsed()) {
      auto os = open_out(cfg, "dof_vs_antennas.csv");
      write_dof_csv(os, run_dof_vs_m(cfg));
    } else if (conv->parsed()) {
      const auto trace = run_convergence(cfg);
      auto os = open_out(cfg, "convergence.csv");
      write_trace_csv(os, trace);
      std::cout << "association " << format_association(convergence_association(cfg)) << ": "
                << trace.final_sum_rate() << " bps/Hz after " << trace.iterations << " iterations"
                << (trace.converged ? "" : " (not converged)") << '\n';
    } else if (theta->parsed()) {
      write_sweep(cfg, run_sweep_theta(cfg), "sweep_theta");
    } else if (power->parsed()) {
      write_sweep(cfg, run_sweep_power(cfg), "sweep_power");
    } else if (opt->parsed()) {
      const auto o = run_optimize(cfg);
      {
        auto os = open_out(cfg, "optimize.csv");
        write_optimize_csv(os, o);
      }
      const auto& best = o.result.best_run();
      {
        auto os = open_out(cfg, "optimize_trace.csv");
        write_trace_csv(os, best.trace);
      }
      {
        const double x = 10.0 * std::log10(cfg.scenario.power * 1e3);
        std::vector<SweepSample> samples{
            {x, cfg.scenario.seed, "coop_best", best.association, best.trace.final_sum_rate(), best.trace.converged,
             best.trace.solution},
            {x, cfg.scenario.seed, "cognitive", o.cognitive.association, o.cognitive.trace.final_sum_rate(),
             o.cognitive.trace.converged, o.cognitive.trace.solution}};
        auto os = open_out(cfg, "optimize_beamformers.csv");
        write_beamformers_csv(os, SweepAxis::power, samples);
      }
      std::cout << "DoF " << o.result.dof << ", best association " << format_association(best.association) << ": "
                << best.trace.final_sum_rate() << " bps/Hz; comp " << o.comp.capacity << ", cognitive "
                << o.cognitive.trace.final_sum_rate() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
