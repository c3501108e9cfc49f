#include "uavcic/association.hpp"
#include "uavcic/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace uavcic;

namespace {

// Counting condition evaluated directly from the backhaul map.
bool feasible_by_counting(const Topology& t, int m, const std::vector<GbsSet>& streams) {
  for (std::size_t j = 0; j < streams.size(); ++j) {
    int psi = 0;
    for (GbsId n1 : t.occupied) {
      const auto& phi = t.neighbours(n1);
      const bool reach = std::any_of(streams[j].begin(), streams[j].end(),
                                     [&](GbsId g) { return std::find(phi.begin(), phi.end(), g) != phi.end(); });
      if (!reach) ++psi;
    }
    int others = 0;
    for (std::size_t i = 0; i < streams.size(); ++i)
      if (i != j) others += static_cast<int>(streams[i].size());
    if (psi + others >= m) return false;
  }
  return true;
}

// Largest J over every labelling of the available GBSs with {unused, 1..J}.
int brute_force_dof(const Topology& t, int m) {
  const auto n2 = t.available.size();
  int best = 0;
  for (int j = 1; j <= static_cast<int>(n2); ++j) {
    std::vector<int> label(n2, 0);
    bool found = false;
    for (;;) {
      std::vector<GbsSet> streams(static_cast<std::size_t>(j));
      for (std::size_t k = 0; k < n2; ++k)
        if (label[k] > 0) streams[static_cast<std::size_t>(label[k] - 1)].push_back(t.available[k]);
      if (std::all_of(streams.begin(), streams.end(), [](const GbsSet& s) { return !s.empty(); }) &&
          feasible_by_counting(t, m, streams)) {
        found = true;
        break;
      }
      std::size_t k = 0;
      while (k < n2 && ++label[k] > j) label[k++] = 0;
      if (k == n2) break;
    }
    if (found) best = j;
  }
  return best;
}

Topology random_topology(std::mt19937_64& rng, int n1, int n2) {
  Topology t;
  t.cell_radius = 100;
  t.uav_position = {0, 0, 100};
  for (int k = 0; k < n1 + n2; ++k) t.gbs_positions.push_back({100.0 * k, 0, 0});
  for (int k = 1; k <= n1; ++k) t.occupied.push_back(k);
  for (int k = n1 + 1; k <= n1 + n2; ++k) t.available.push_back(k);
  std::bernoulli_distribution coin(0.5);
  for (GbsId a : t.occupied) {
    GbsSet phi;
    for (GbsId b : t.available)
      if (coin(rng)) phi.push_back(b);
    t.backhaul[a] = phi;
  }
  return t;
}

}  // namespace

TEST_CASE("parse and format association literals") {
  const auto a = parse_association("[[7,4],[5,8],[6]]");
  CHECK(a.streams == std::vector<GbsSet>{{4, 7}, {5, 8}, {6}});
  CHECK(format_association(a) == "[[4,7],[5,8],[6]]");
  CHECK(a.stream_of(8) == std::optional<std::size_t>(1));
  CHECK(!a.stream_of(3));
  CHECK(a.gbs_count() == 5);
  CHECK_THROWS_AS(parse_association("[[4,7"), ConfigError);
  CHECK_THROWS_AS(parse_association("4"), ConfigError);
  CHECK_THROWS_AS(parse_association("[[a]]"), ConfigError);
}

TEST_CASE("association validation") {
  const Topology t = reference_topology();
  CHECK(validate(t, parse_association("[[4,7],[5,8],[6]]")).empty());
  CHECK(!validate(t, parse_association("[[4,7],[7]]")).empty());
  CHECK(!validate(t, parse_association("[[1],[5]]")).empty());
  CHECK(!validate(t, parse_association("[[],[5]]")).empty());
}

TEST_CASE("derived sets for the two reference associations") {
  const Topology t = reference_topology();
  const auto all = derive_sets(t, parse_association("[[4,7],[5,8],[6]]"));
  for (GbsId n1 : t.occupied) CHECK(all.gamma.at(n1).empty());

  const auto single = derive_sets(t, parse_association("[[5],[6],[7]]"));
  CHECK(single.gamma.at(1) == std::vector<std::size_t>{2});
  CHECK(single.gamma.at(2).empty());
  CHECK(single.gamma.at(3) == std::vector<std::size_t>{0});
  CHECK(single.psi[0] == GbsSet{3});
  CHECK(single.psi[1].empty());
  CHECK(single.psi[2] == GbsSet{1});
  CHECK(single.omega.at({1, 0}) == GbsSet{5});
  CHECK(single.omega.at({1, 2}).empty());
}

TEST_CASE("DoF table of the reference topology") {
  const Topology t = reference_topology();
  const std::vector<int> coop{1, 1, 2, 3, 3, 4, 5, 5};
  const std::vector<int> comp{1, 2, 3, 4, 5, 5, 5, 5};
  const std::vector<int> cog{0, 0, 0, 1, 2, 3, 4, 5};
  for (int m = 1; m <= 8; ++m) {
    const auto r = max_dof(t, m);
    CHECK(r.dof == coop[m - 1]);
    REQUIRE(r.witness);
    CHECK(r.witness->stream_count() == static_cast<std::size_t>(r.dof));
    CHECK(theorem1_feasible(t, m, *r.witness));
    CHECK(comp_dof(m, 5) == comp[m - 1]);
    CHECK(isolated_dof(m, 3, 5) == cog[m - 1]);
  }
}

TEST_CASE("known feasible and infeasible associations") {
  const Topology t = reference_topology();
  CHECK(theorem1_feasible(t, 5, parse_association("[[4,7],[5,8],[6]]")));
  CHECK(theorem1_feasible(t, 4, parse_association("[[5],[6],[7]]")));
  CHECK(theorem1_feasible(t, 3, parse_association("[[4,6],[5,7]]")));
  CHECK(theorem1_feasible(t, 1, parse_association("[[5,7]]")));
  CHECK(theorem1_feasible(t, 6, parse_association("[[4,8],[5],[6],[7]]")));
  CHECK(!theorem1_feasible(t, 3, parse_association("[[5],[6],[7]]")));
}

TEST_CASE("enumeration at M = 5") {
  const Topology t = reference_topology();
  const auto all = enumerate_feasible(t, 5, 3);
  CHECK(all.size() == 22);
  std::set<std::string> seen;
  for (const auto& a : all) {
    CHECK(theorem1_feasible(t, 5, a));
    CHECK(validate(t, a).empty());
    CHECK(seen.insert(format_association(a)).second);
  }
  CHECK(seen.count("[[4,7],[5,8],[6]]"));
  CHECK(seen.count("[[5],[6],[7]]"));
  CHECK(enumerate_feasible(t, 5, 3, 4).size() == 4);
  CHECK(enumerate_feasible(t, 5, 6).empty());
}

TEST_CASE("max_dof agrees with brute force on random backhaul graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n1 = 1 + static_cast<int>(rng() % 3);
    const int n2 = 1 + static_cast<int>(rng() % 4);
    const Topology t = random_topology(rng, n1, n2);
    for (int m = 1; m <= 5; ++m) CHECK(max_dof(t, m).dof == brute_force_dof(t, m));
  }
}

TEST_CASE("no stream fits") {
  Topology t = reference_topology();
  t = without_backhaul(t);
  CHECK(max_dof(t, 3).dof == 0);
  CHECK(!max_dof(t, 3).witness);
}
