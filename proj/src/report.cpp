// Copyright 2026 The qcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcert/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qcert {

namespace {

void writeCell(std::ostream& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void writeRow(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out << ',';
    writeCell(out, row[i]);
  }
  out << '\n';
}

}  // namespace

std::string formatNumber(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string formatNumber(const std::optional<double>& x) {
  return x ? formatNumber(*x) : std::string();
}

void writeCsv(std::ostream& out, const Table& table) {
  writeRow(out, table.header);
  for (const auto& row : table.rows) writeRow(out, row);
}

}  // namespace qcert
