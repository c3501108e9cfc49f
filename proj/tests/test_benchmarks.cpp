#include "uavcic/benchmarks.hpp"
#include "uavcic/units.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace uavcic;

namespace {

// Water level by bisection on sum max(mu - 1/g, 0) = P.
double bisection_capacity(const std::vector<double>& g, double p) {
  double lo = 0.0, hi = p + 1.0 / *std::min_element(g.begin(), g.end());
  for (int it = 0; it < 200; ++it) {
    const double mu = 0.5 * (lo + hi);
    double used = 0.0;
    for (double x : g) used += std::max(mu - 1.0 / x, 0.0);
    (used > p ? hi : lo) = mu;
  }
  double c = 0.0;
  for (double x : g) c += std::log2(1.0 + std::max(lo - 1.0 / x, 0.0) * x);
  return c;
}

}  // namespace

TEST_CASE("water-filling hand examples") {
  auto r = comp_capacity(std::vector<double>{2, 1}, 3);
  CHECK(r.water_level == doctest::Approx(2.125));
  CHECK(r.powers[0] == doctest::Approx(1.875));
  CHECK(r.powers[1] == doctest::Approx(1.125));
  CHECK(r.capacity == doctest::Approx(std::log2(8.5) + std::log2(2.125)));
  CHECK(std::abs(r.capacity - 4.174) < 1e-3);

  CHECK(comp_capacity(std::vector<double>{1}, 1).capacity == doctest::Approx(1.0));
  CHECK(comp_capacity(std::vector<double>{2, 1}, 1e-12).capacity < 1e-10);

  // Weak mode left dry.
  r = water_fill({10, 0.01}, 1);
  CHECK(r.powers[1] == 0.0);
  CHECK(r.powers[0] == doctest::Approx(1.0));
}

TEST_CASE("water-filling matches bisection and KKT") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.01, 10), lp(-2, 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> g(1 + rng() % 6);
    for (auto& x : g) x = u(rng);
    const double p = std::pow(10.0, lp(rng));
    const auto r = water_fill(g, p);
    CHECK(std::abs(r.capacity - bisection_capacity(g, p)) < 1e-6);
    CHECK(std::accumulate(r.powers.begin(), r.powers.end(), 0.0) <= p + 1e-9);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(r.powers[i] == doctest::Approx(std::max(r.water_level - 1.0 / g[i], 0.0)).epsilon(1e-9));
  }
}

TEST_CASE("CoMP capacity from channels") {
  const Scenario s = reference_scenario();
  const auto ch = s.sample();
  const auto r = comp_capacity(ch, s.topology, s.power);
  CHECK(r.singular_values.size() == 5);
  // Capacity equals log det(I + H Q H^H) with the water-filled covariance.
  CMatrix h(5, 5);
  for (int k = 0; k < 5; ++k) h.row(k) = ch.of(s.topology.available[k]).adjoint() / std::sqrt(ch.noise(s.topology.available[k]));
  const auto d = svd(h);
  CMatrix q = CMatrix::Zero(5, 5);
  for (int k = 0; k < 5; ++k) q += r.powers[k] * d.v.col(k) * d.v.col(k).adjoint();
  const CMatrix m = CMatrix::Identity(5, 5) + h * q * h.adjoint();
  CHECK(std::log2(m.determinant().real()) == doctest::Approx(r.capacity).epsilon(1e-9));

  const auto best = optimize_scenario(s, ch);
  CHECK(r.capacity >= best.best_run().trace.final_sum_rate());
}

TEST_CASE("cognitive beamforming") {
  const Scenario s = reference_scenario();
  const auto ch = s.sample();
  const auto cog = cognitive_beamforming(s, ch);
  CHECK(cog.association.stream_count() == 2);
  for (const auto& st : cog.association.streams) CHECK(st.size() == 1);
  CHECK(cog.trace.converged);
  // Every occupied GBS sees every stream.
  for (GbsId n1 : s.topology.occupied) {
    CHECK(cog.trace.solution.residual_interference.at(n1) == doctest::Approx(cog.trace.solution.total_interference.at(n1)));
    CHECK(cog.trace.solution.residual_interference.at(n1) <= s.theta.at(n1) * (1 + 1e-6));
  }

  Scenario three = s;
  three.channel.antennas = 3;
  const auto none = cognitive_beamforming(three, three.sample());
  CHECK(none.association.stream_count() == 0);
  CHECK(none.trace.final_sum_rate() == 0.0);

  const auto pinned = cognitive_beamforming(s, ch, parse_association("[[5],[7]]"));
  CHECK(pinned.association == parse_association("[[5],[7]]"));
  CHECK(pinned.trace.final_sum_rate() > 0.0);
}

TEST_CASE("cognitive decoders rank by post-nulling gain") {
  const Scenario s = reference_scenario();
  const auto ch = s.sample();
  const auto a = cognitive_association(ch, s.topology, 5);
  REQUIRE(a.stream_count() == 5);
  std::vector<CVector> occ;
  for (GbsId n1 : s.topology.occupied) occ.push_back(ch.of(n1));
  const CMatrix p = projector(null_space(hstack(occ, 5)));
  for (std::size_t j = 1; j < 5; ++j)
    CHECK((p * ch.of(a.streams[j - 1][0])).norm() >= (p * ch.of(a.streams[j][0])).norm());
}
