// SPDX-License-Identifier: Apache-2.0
#include "uavcic/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <stdexcept>

namespace uavcic::csv {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = line.find(sep, start);
    out.push_back(line.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) return t;
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.header.size())
      throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

}  // namespace uavcic::csv
