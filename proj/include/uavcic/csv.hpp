// SPDX-License-Identifier: Apache-2.0
//
// Minimal CSV support for the files this library writes: comma separated,
// one header line, no quoting (fields never contain commas).
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace uavcic::csv {

/// Round-trippable decimal text for a double.
std::string num(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
};

/// Reads a whole table. Throws std::runtime_error on a row whose field count
/// differs from the header.
Table read(std::istream& in);

std::vector<std::string> split(const std::string& line, char sep = ',');

}  // namespace uavcic::csv
