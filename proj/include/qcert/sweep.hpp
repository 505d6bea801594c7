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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcert/certification.hpp"
#include "qcert/config.hpp"
#include "qcert/detection.hpp"
#include "qcert/noise_models.hpp"
#include "qcert/probe_states.hpp"
#include "qcert/report.hpp"

namespace qcert {

struct Experiment {
  BipartiteProbeState probe;
  QuantumChannel channel;
  Povm povm;
};

Experiment buildExperiment(const Json& channel, const Json& probe, const Json& povm);

/// Closed-form Q_DET (no post-processing) when the configuration is one of
/// the analytically solved cases: depolarizing channel with a maximally
/// entangled or isotropic probe and Bell POVM, or erasure channel with the
/// same probes and the erasure-adapted POVM.
std::optional<double> closedFormQdet(const Json& channel, const Json& probe, const Json& povm);

/// Exact quantum capacity when known (erasure channel).
std::optional<double> exactCapacity(const Json& channel);

struct SweepSpec {
  Json channel;
  Json probe;
  Json povm;
  std::string variable;  // "p" or "F"
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
  bool optimize = false;
  std::uint64_t shots = 0;  // 0 = exact statistics only
  std::uint64_t seed = 0;
};

/// Throws ConfigError when the config has no sweep section.
SweepSpec sweepSpecFromConfig(const ExperimentConfig& cfg);

/// Throws ConfigError on an invalid grid or a variable the channel/probe
/// does not have.
void validateSweepSpec(const SweepSpec& spec);

struct SweepRow {
  double value = 0.0;
  double qdet = 0.0;
  std::optional<double> closedForm;
  std::optional<double> exactCapacity;
  std::optional<double> estimate;
};

/// Grid value of point k: start + k (stop - start) / (steps - 1).
double gridValue(const SweepSpec& spec, std::size_t k);

/// Evaluates every grid point (in parallel); rows come back in grid order.
/// With shots > 0 point k is sampled with deriveSubSeed(seed, k).
std::vector<SweepRow> runSweep(const SweepSpec& spec);

/// CSV layout of a sweep: <variable>,qdet,qdet_closed_form,exact_capacity,qdet_estimate
Table sweepTable(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Single-point certification, plus a finite-shot estimate when shots > 0
/// (seeded with deriveSubSeed(seed, 0)).
struct CertifyReport {
  CertificationResult result;
  std::uint64_t shots = 0;
  std::optional<double> estimate;
};

CertifyReport runCertify(const ExperimentConfig& cfg);
Table certifyTable(const CertifyReport& report);

/// Figure data for the qubit case. which = 1: depolarizing channel,
/// p in [0, 0.25], columns p, qdet_F1.00, qdet_F0.98, qdet_F0.95, qdet_F0.90.
/// which = 2: erasure channel, p in [0, 0.5], the same Q_DET columns plus
/// the exact capacity.
Table figureTable(int which, std::size_t steps = 101);

}  // namespace qcert
