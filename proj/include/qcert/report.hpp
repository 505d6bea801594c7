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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcert {

/// 12 significant digits ("%.12g" in the C locale); negative zero prints
/// as 0.
std::string formatNumber(double x);
std::string formatNumber(const std::optional<double>& x);  // empty when unset

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: cells holding ',', '"' or a newline are quoted. LF line
/// endings.
void writeCsv(std::ostream& out, const Table& table);

}  // namespace qcert
