#include "uavcic/channel.hpp"
#include "uavcic/numerics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace uavcic;

TEST_CASE("los steering") {
  const CVector one = los_steering(1, 0.3);
  CHECK(one.size() == 1);
  CHECK(std::abs(one(0) - Complex(1, 0)) < 1e-15);

  const CVector two = los_steering(2, std::numbers::pi / 2);
  CHECK(std::abs(two(0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(two(1) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

  const CVector four = los_steering(4, 0.0);
  CHECK(four.norm() == doctest::Approx(1.0));
  for (int m = 0; m < 4; ++m) CHECK(std::abs(four(m) - std::polar(0.5, std::numbers::pi * m)) < 1e-14);
}

TEST_CASE("noise power") {
  CHECK(noise_power(-169, 1e7) == doctest::Approx(1.2589e-13).epsilon(1e-4));
  CHECK(noise_power(0, 1) == doctest::Approx(1e-3));
  CHECK(noise_power(-169, 1) == doctest::Approx(1.2589e-20).epsilon(1e-4));
}

TEST_CASE("pure LoS limit has the path-loss norm") {
  const Topology t = reference_topology();
  ChannelParams p;
  p.rician_factor = 1e12;
  const auto ch = sample_channels(t, p, 7);
  const auto d = distances(t);
  const double tau0 = std::pow(10.0, p.reference_gain_db / 10.0);
  for (int k = 0; k < t.gbs_count(); ++k)
    CHECK(ch.h[k].norm() == doctest::Approx(std::sqrt(tau0) / d[k]).epsilon(1e-4));
}

TEST_CASE("Rayleigh second moment and Rician power split") {
  Topology t;
  t.uav_position = {0, 0, 100};
  t.gbs_positions = {{0, 0, 0}};
  t.available = {1};
  t.cell_radius = 200;
  ChannelParams p;
  p.antennas = 4;
  const double tau0 = std::pow(10.0, p.reference_gain_db / 10.0);
  const double gain = tau0 / 1e4;

  p.rician_factor = 0.0;
  double mean = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) mean += sample_channels(t, p, s).h[0].squaredNorm();
  mean /= draws;
  CHECK(mean == doctest::Approx(p.antennas * gain).epsilon(0.05));

  // Scattered share: subtract the deterministic LoS part.
  p.rician_factor = 5.0;
  const CVector los = std::sqrt(gain * 5.0 / 6.0) * los_steering(p.antennas, std::numbers::pi / 2);
  double scatter = 0.0;
  for (int s = 0; s < draws; ++s) scatter += (sample_channels(t, p, s).h[0] - los).squaredNorm();
  scatter /= draws;
  CHECK(scatter == doctest::Approx(p.antennas * gain / 6.0).epsilon(0.05));
}

TEST_CASE("same seed gives identical channels") {
  const Topology t = reference_topology();
  const auto a = sample_channels(t, {}, 42);
  const auto b = sample_channels(t, {}, 42);
  const auto c = sample_channels(t, {}, 43);
  for (std::size_t k = 0; k < a.h.size(); ++k) {
    CHECK(a.h[k] == b.h[k]);
    CHECK(a.sigma2[k] == b.sigma2[k]);
  }
  CHECK(a.h[0] != c.h[0]);
}

TEST_CASE("any five channels of the reference layout are independent") {
  const Topology t = reference_topology();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto ch = sample_channels(t, {}, seed);
    CMatrix h(5, 5);
    for (int k = 0; k < 5; ++k) h.col(k) = ch.h[k] / ch.h[k].norm();
    CHECK(rank(h) == 5);
  }
}

TEST_CASE("channel CSV") {
  const auto ch = sample_channels(reference_topology(), {}, 1);
  std::ostringstream os;
  write_channels_csv(os, ch);
  const auto text = os.str();
  CHECK(text.rfind("gbs_id,antenna_index,re,im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 * 5);
}
