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
#include <string>
#include <vector>

namespace qcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternalError = 1;  // anything outside the qcert error hierarchy
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Entry point of the `qcert` tool. `args` excludes the program name.
/// Subcommands: certify, sweep, figure, threshold, sample.
int cliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcert
