// SPDX-License-Identifier: Apache-2.0
#include "uavcic/association.hpp"

#include "uavcic/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <functional>
#include <set>

namespace uavcic {

std::size_t StreamAssociation::gbs_count() const {
  std::size_t n = 0;
  for (const auto& s : streams) n += s.size();
  return n;
}

std::optional<std::size_t> StreamAssociation::stream_of(GbsId id) const {
  for (std::size_t j = 0; j < streams.size(); ++j)
    if (std::binary_search(streams[j].begin(), streams[j].end(), id)) return j;
  return std::nullopt;
}

std::vector<std::string> validate(const Topology& t, const StreamAssociation& a) {
  std::vector<std::string> out;
  std::set<GbsId> used;
  for (std::size_t j = 0; j < a.streams.size(); ++j) {
    const auto& s = a.streams[j];
    const std::string tag = "stream " + std::to_string(j + 1);
    if (s.empty()) out.push_back(tag + " has no decoding GBS");
    if (!std::is_sorted(s.begin(), s.end())) out.push_back(tag + " members are not sorted");
    for (GbsId id : s) {
      if (!t.is_available(id)) out.push_back(tag + " uses GBS " + std::to_string(id) + " which is not available");
      if (!used.insert(id).second) out.push_back("GBS " + std::to_string(id) + " decodes more than one stream");
    }
  }
  return out;
}

StreamAssociation parse_association(std::string_view literal) {
  StreamAssociation a;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(literal));
  } catch (const YAML::Exception& e) {
    throw ConfigError("association literal: " + std::string(e.what()));
  }
  if (!root.IsSequence()) throw ConfigError("association literal must be a list of lists, e.g. [[4,7],[5,8],[6]]");
  for (const auto& stream : root) {
    if (!stream.IsSequence()) throw ConfigError("association literal: each stream must be a list of GBS ids");
    GbsSet s;
    for (const auto& id : stream) {
      try {
        s.push_back(id.as<int>());
      } catch (const YAML::Exception&) {
        throw ConfigError("association literal: GBS ids must be integers");
      }
    }
    std::sort(s.begin(), s.end());
    a.streams.push_back(std::move(s));
  }
  return a;
}

std::string format_association(const StreamAssociation& a) {
  std::string out = "[";
  for (std::size_t j = 0; j < a.streams.size(); ++j) {
    if (j) out += ',';
    out += '[';
    for (std::size_t k = 0; k < a.streams[j].size(); ++k) {
      if (k) out += ',';
      out += std::to_string(a.streams[j][k]);
    }
    out += ']';
  }
  return out + "]";
}

namespace {

bool intersects(const GbsSet& x, const GbsSet& y) {
  auto i = x.begin();
  auto k = y.begin();
  while (i != x.end() && k != y.end()) {
    if (*i == *k) return true;
    if (*i < *k) ++i; else ++k;
  }
  return false;
}

// |psi(j)| + sum_{i != j} |streams[i]| < M for every j.
bool counting_condition(const Topology& t, int antennas, const StreamAssociation& a) {
  const auto total = static_cast<int>(a.gbs_count());
  for (const auto& s : a.streams) {
    int psi = 0;
    for (GbsId n1 : t.occupied)
      if (!intersects(t.neighbours(n1), s)) ++psi;
    if (psi + total - static_cast<int>(s.size()) >= antennas) return false;
  }
  return true;
}

}  // namespace

DerivedSets derive_sets(const Topology& t, const StreamAssociation& a) {
  DerivedSets d;
  d.psi.resize(a.streams.size());
  for (GbsId n1 : t.occupied) {
    auto& gamma = d.gamma[n1];
    const auto& phi = t.neighbours(n1);
    for (std::size_t j = 0; j < a.streams.size(); ++j) {
      GbsSet omega;
      std::set_intersection(phi.begin(), phi.end(), a.streams[j].begin(), a.streams[j].end(),
                            std::back_inserter(omega));
      if (omega.empty()) {
        gamma.push_back(j);
        d.psi[j].push_back(n1);
      }
      d.omega[{n1, j}] = std::move(omega);
    }
  }
  return d;
}

bool theorem1_feasible(const Topology& t, int antennas, const StreamAssociation& a) {
  for (const auto& s : a.streams)
    if (s.empty()) return false;
  return counting_condition(t, antennas, a);
}

std::vector<StreamAssociation> enumerate_feasible(const Topology& t, int antennas, int streams,
                                                  std::size_t cap) {
  std::vector<StreamAssociation> out;
  const int n2 = static_cast<int>(t.available.size());
  if (streams < 1 || cap == 0 || streams > std::min(antennas, n2)) return out;

  // labels[k] = 0 for unused, s + 1 for stream s.
  std::vector<int> labels(static_cast<std::size_t>(n2), 0);
  StreamAssociation current;
  current.streams.resize(static_cast<std::size_t>(streams));

  std::function<void(int, int)> visit = [&](int k, int opened) {
    if (out.size() >= cap) return;
    // Not enough GBSs left to open the remaining streams.
    if (streams - opened > n2 - k) return;
    if (k == n2) {
      for (auto& s : current.streams) s.clear();
      for (int i = 0; i < n2; ++i)
        if (labels[static_cast<std::size_t>(i)] > 0)
          current.streams[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)] - 1)].push_back(
              t.available[static_cast<std::size_t>(i)]);
      if (counting_condition(t, antennas, current)) out.push_back(current);
      return;
    }
    const int top = std::min(opened + 1, streams);
    for (int label = 0; label <= top; ++label) {
      labels[static_cast<std::size_t>(k)] = label;
      visit(k + 1, std::max(opened, label));
    }
    labels[static_cast<std::size_t>(k)] = 0;
  };
  visit(0, 0);
  return out;
}

DofResult max_dof(const Topology& t, int antennas) {
  const int upper = std::min(antennas, static_cast<int>(t.available.size()));
  for (int j = upper; j >= 1; --j) {
    auto found = enumerate_feasible(t, antennas, j, 1);
    if (!found.empty()) return {j, std::move(found.front())};
  }
  return {};
}

int comp_dof(int antennas, int available_count) { return std::max(0, std::min(antennas, available_count)); }

int isolated_dof(int antennas, int occupied_count, int available_count) {
  return std::min(std::max(antennas - occupied_count, 0), available_count);
}

}  // namespace uavcic
