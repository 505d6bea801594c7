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

// JSON experiment configuration.
//
//   {
//     "channel":  {"type": "depolarizing", "d": 2, "p": 0.1},
//     "probe":    {"type": "isotropic", "d": 2, "F": 0.95},
//     "povm":     {"type": "bell"},
//     "sweep":    {"variable": "p", "start": 0.0, "stop": 0.25, "steps": 26},
//     "shots": 0, "seed": 42, "optimize": false
//   }
//
// See README.md for every channel/probe/POVM variant. Complex matrices are
// arrays of rows; an entry is a number or a [re, im] pair.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "qcert/detection.hpp"
#include "qcert/errors.hpp"
#include "qcert/noise_models.hpp"
#include "qcert/probe_states.hpp"

namespace qcert {

using Json = nlohmann::json;

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct SweepRange {
  std::string variable;  // "p" (channel parameter) or "F" (probe fidelity)
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
};

struct ExperimentConfig {
  Json channel;
  Json probe;
  Json povm;
  std::optional<SweepRange> sweep;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool optimize = false;
};

ExperimentConfig parseConfig(const Json& doc);
ExperimentConfig loadConfig(const std::filesystem::path& path);

ComplexMatrix complexMatrixFromJson(const Json& j);

QuantumChannel channelFromJson(const Json& j);
BipartiteProbeState probeFromJson(const Json& j);
/// `probeDim` fills in "d" for the bell / erasure_adapted POVMs when the
/// config omits it.
Povm povmFromJson(const Json& j, std::size_t probeDim);

}  // namespace qcert
