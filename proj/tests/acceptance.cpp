// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.
#include "uavcic/benchmarks.hpp"
#include "uavcic/experiments.hpp"
#include "uavcic/units.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace uavcic;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& measured, double seconds) {
  std::printf("[%s] criterion %d: %s | %s | %.2f s\n", ok ? "PASS" : "FAIL", id, what.c_str(), measured.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void run(int id, const std::string& what, F&& body) {
  const auto t0 = Clock::now();
  std::string measured;
  bool ok = false;
  try {
    ok = body(measured);
  } catch (const std::exception& e) {
    measured = std::string("exception: ") + e.what();
  }
  report(id, ok, what, measured, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Zero-forcing existence checked numerically: each stream needs a beamformer
// orthogonal to every forbidden channel that still reaches all its decoders.
bool zf_exists(const ChannelSet& ch, const Topology& t, const StreamAssociation& a) {
  const auto sets = derive_sets(t, a);
  for (std::size_t j = 0; j < a.stream_count(); ++j) {
    const CMatrix c = zf_constraint_matrix(ch, t, a, sets, j);
    const CMatrix n = null_space(c, 1e-9);
    if (n.cols() == 0) return false;
    for (GbsId g : a.streams[j])
      if ((n.adjoint() * ch.of(g)).norm() <= 1e-9 * ch.of(g).norm()) return false;
  }
  return true;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

}  // namespace

int main() {
  const auto A = parse_association("[[4,7],[5,8],[6]]");
  const auto B = parse_association("[[5],[6],[7]]");

  run(1, "DoF table M=1..8 exact, < 1 s", [&](std::string& m) {
    const auto t0 = Clock::now();
    const auto rows = run_dof_vs_m(default_config());
    const double dt = seconds_since(t0);
    const std::vector<int> coop{1, 1, 2, 3, 3, 4, 5, 5}, comp{1, 2, 3, 4, 5, 5, 5, 5}, cog{0, 0, 0, 1, 2, 3, 4, 5};
    bool ok = rows.size() == 8;
    std::string got;
    for (std::size_t k = 0; ok && k < 8; ++k) {
      ok = rows[k].antennas == static_cast<int>(k + 1) && rows[k].coop == coop[k] && rows[k].comp == comp[k] &&
           rows[k].cognitive == cog[k];
    }
    for (const auto& r : rows) got += std::to_string(r.coop);
    m = "coop=" + got + fmt(" time=%.3fs", dt);
    return ok && dt < 1.0;
  });

  run(2, "counting condition equals numerical ZF existence on >= 200 random instances, < 30 s", [&](std::string& m) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::bernoulli_distribution coin(0.5);
    int instances = 0, agree = 0, feasible = 0;
    while (instances < 400) {
      const int mant = 1 + static_cast<int>(rng() % 4);
      const int n1 = static_cast<int>(rng() % 4);
      const int n2 = 1 + static_cast<int>(rng() % 4);
      Topology t;
      t.cell_radius = 100;
      t.uav_position = {0, 0, 100};
      for (int k = 0; k < n1 + n2; ++k) t.gbs_positions.push_back({120.0 * k, 40.0 * (k % 3), 0});
      for (int k = 1; k <= n1; ++k) t.occupied.push_back(k);
      for (int k = n1 + 1; k <= n1 + n2; ++k) t.available.push_back(k);
      for (GbsId o : t.occupied) {
        GbsSet phi;
        for (GbsId v : t.available)
          if (coin(rng)) phi.push_back(v);
        t.backhaul[o] = phi;
      }
      // Random association: each available GBS unused or assigned to one of J streams.
      const int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n2));
      StreamAssociation a;
      a.streams.resize(static_cast<std::size_t>(j));
      for (GbsId v : t.available) {
        const int label = static_cast<int>(rng() % static_cast<unsigned>(j + 1));
        if (label > 0) a.streams[static_cast<std::size_t>(label - 1)].push_back(v);
      }
      bool empty = false;
      for (const auto& s : a.streams) empty |= s.empty();
      if (empty) continue;
      ChannelParams p;
      p.antennas = mant;
      p.rician_factor = 1.0;
      const auto ch = sample_channels(t, p, rng());
      const bool counted = theorem1_feasible(t, mant, a);
      agree += counted == zf_exists(ch, t, a);
      feasible += counted;
      ++instances;
    }
    const double dt = seconds_since(t0);
    m = fmt("agree %.0f/%.0f (feasible %.0f) time=%.2fs", agree, instances, feasible, dt);
    return instances >= 200 && agree == instances && dt < 30.0;
  });

  run(3, "SCA monotone within 1e-9 and feasible within 1e-6, 20 seeds x 2 associations, < 5 min", [&](std::string& m) {
    const auto t0 = Clock::now();
    Scenario s = reference_scenario();
    double worst_drop = 0.0, worst_violation = -1e300;
    int runs = 0, converged = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      s.seed = seed;
      const auto ch = s.sample();
      for (const auto& a : {A, B}) {
        const auto tr = run_sca(ch, s.topology, a, s.power, s.theta);
        ++runs;
        converged += tr.converged;
        for (std::size_t q = 1; q < tr.sum_rates.size(); ++q)
          worst_drop = std::max(worst_drop, tr.sum_rates[q - 1] - tr.sum_rates[q]);
        for (double v : tr.max_violation) worst_violation = std::max(worst_violation, v);
      }
    }
    const double dt = seconds_since(t0);
    m = fmt("max drop %.2e, max violation %.2e, converged %.0f/%.0f", worst_drop, worst_violation, converged, runs);
    return worst_drop <= 1e-9 && worst_violation <= 1e-6 && converged == runs && dt < 300.0;
  });

  run(4, "single link reaches log2(1 + P|h|^2/sigma^2) within 1e-3 over 20 channels", [&](std::string& m) {
    Topology t;
    t.cell_radius = 200;
    t.uav_position = {0, 0, 100};
    t.gbs_positions = {{-120, 210, 0}};
    t.available = {1};
    const double p = units::dbm_to_watts(23);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto ch = sample_channels(t, {}, seed);
      const double c = std::log2(1.0 + p * ch.h[0].squaredNorm() / ch.sigma2[0]);
      worst = std::max(worst, std::abs(run_sca(ch, t, parse_association("[[1]]"), p, {}).final_sum_rate() - c));
    }
    m = fmt("max error %.2e bps/Hz", worst);
    return worst < 1e-3;
  });

  run(5, "water-filling equals bisection within 1e-6 on 100 instances; [2,1], P=3 gives 4.174", [&](std::string& m) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 5), lp(-2, 2);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> s(1 + rng() % 5);
      for (auto& x : s) x = u(rng);
      const double p = std::pow(10.0, lp(rng));
      double lo = 0, hi = p + 1e6;
      for (int it = 0; it < 300; ++it) {
        const double mu = 0.5 * (lo + hi);
        double used = 0;
        for (double x : s) used += std::max(mu - 1.0 / (x * x), 0.0);
        (used > p ? hi : lo) = mu;
      }
      double c = 0;
      for (double x : s) c += std::log2(1.0 + std::max(lo - 1.0 / (x * x), 0.0) * x * x);
      worst = std::max(worst, std::abs(comp_capacity(s, p).capacity - c));
    }
    const double hand = comp_capacity(std::vector<double>{2, 1}, 3).capacity;
    m = fmt("max error %.2e, hand example %.4f", worst, hand);
    return worst < 1e-6 && std::abs(hand - 4.174) < 1e-3;
  });

  run(6, "surrogate tight at anchor (1e-9), lower bound at 1e4 points, gradient vs central differences (1e-5)",
      [&](std::string& m) {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> u(-3, 3), pos(0.05, 4), rate(0.01, 5);
        double tight = 0, excess = -1e300, grad = 0;
        for (int k = 0; k < 10000; ++k) {
          const double a = u(rng), b = u(rng), r = rate(rng), eta = pos(rng);
          const double exact = a * a + b * b - (std::exp2(r) - 1.0) * eta;
          const convex::Anchor at{a, b, std::sqrt((std::exp2(r) - 1.0) / eta)};
          tight = std::max(tight, std::abs(convex::eval_surrogate(a, b, r, eta, at).value - exact) / (1 + std::abs(exact)));
          const convex::Anchor any{u(rng), u(rng), pos(rng)};
          const auto v = convex::eval_surrogate(a, b, r, eta, any);
          excess = std::max(excess, v.value - exact);
          double x[4] = {a, b, r, eta};
          for (int i = 0; i < 4; ++i) {
            double xp[4] = {a, b, r, eta}, xm[4] = {a, b, r, eta};
            const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
            xp[i] += h;
            xm[i] -= h;
            const double fd = (convex::eval_surrogate(xp[0], xp[1], xp[2], xp[3], any).value -
                               convex::eval_surrogate(xm[0], xm[1], xm[2], xm[3], any).value) / (2 * h);
            grad = std::max(grad, std::abs(fd - v.grad[static_cast<std::size_t>(i)]) / std::max(1.0, std::abs(fd)));
          }
        }
        m = fmt("tightness %.1e, max(f - exact) %.1e, gradient error %.1e", tight, excess, grad);
        return tight <= 1e-9 && excess <= 1e-9 && grad <= 1e-5;
      });

  // Shared by criteria 7 and 8.
  const auto base = default_config();

  run(7, "P=23 dBm, theta=-60 dBm, 50 seeds: CoMP >= cooperative every seed, cooperative > cognitive in >= 95%",
      [&](std::string& m) {
        int comp_ok = 0, coop_wins = 0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
          const Scenario s = scenario_at(base, SweepAxis::theta, -60.0, seed);
          const auto ch = s.sample();
          const double coop = optimize_scenario(s, ch).best_run().trace.final_sum_rate();
          comp_ok += comp_capacity(ch, s.topology, s.power).capacity >= coop;
          coop_wins += coop > cognitive_beamforming(s, ch).trace.final_sum_rate();
        }
        m = fmt("CoMP >= coop %.0f/50, coop > cognitive %.0f/50", comp_ok, coop_wins);
        return comp_ok == 50 && coop_wins >= 48;
      });

  run(8, "seed-mean {4,7}/{5,8}/{6} above {5}/{6}/{7} at theta=-90 dBm and below at -60 dBm, 50 seeds",
      [&](std::string& m) {
        double mean[2][2] = {{0, 0}, {0, 0}};
        const double thetas[2] = {-90.0, -60.0};
        for (int k = 0; k < 2; ++k)
          for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const Scenario s = scenario_at(base, SweepAxis::theta, thetas[k], seed);
            const auto ch = s.sample();
            mean[k][0] += run_sca(ch, s.topology, A, s.power, s.theta).final_sum_rate() / 50.0;
            mean[k][1] += run_sca(ch, s.topology, B, s.power, s.theta).final_sum_rate() / 50.0;
          }
        m = fmt("-90 dBm: %.3f vs %.3f; -60 dBm: %.3f vs %.3f", mean[0][0], mean[0][1], mean[1][0], mean[1][1]);
        return mean[0][0] > mean[0][1] && mean[1][0] < mean[1][1];
      });

  run(9, "slope ratio cooperative:cognitive over the top 10 dB of the power sweep within 20% of 3:2",
      [&](std::string& m) {
        ExperimentConfig c = base;
        const double top = *std::max_element(c.power_grid_dbm.begin(), c.power_grid_dbm.end());
        std::vector<double> grid;
        for (double x : c.power_grid_dbm)
          if (x >= top - 10.0) grid.push_back(x);
        c.power_grid_dbm = grid;
        SweepSchemes which;
        which.pinned = which.comp = false;
        const auto r = run_sweep_power(c, which);
        std::vector<double> coop, cog;
        for (double x : grid) {
          coop.push_back(r.mean("coop_best", x));
          cog.push_back(r.mean("cognitive", x));
        }
        const double sc = slope(grid, coop), sg = slope(grid, cog);
        const double ratio = sc / sg;
        m = fmt("slopes %.4f / %.4f bps/Hz/dB over %.0f-%.0f dBm", sc, sg, top - 10.0, top);
        m += fmt(", ratio %.3f (target 1.5 +/- 20%%)", ratio);
        return std::abs(ratio / 1.5 - 1.0) <= 0.2;
      });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
