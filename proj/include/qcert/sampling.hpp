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

// Finite-shot emulation of the measurement step.
//
// Reproducibility contract: outcomes are drawn one shot at a time from
// std::mt19937_64 seeded with the 64-bit seed. Each draw takes one engine
// output x and forms u = (x >> 11) * 2^-53 in [0, 1); the outcome is the
// first index i with u < p_0 + ... + p_i. Both mt19937_64 and this mapping
// are fully specified, so counts are identical on every conforming platform.

#include <cstdint>
#include <vector>

#include "qcert/detection.hpp"
#include "qcert/numerics.hpp"

namespace qcert {

/// SplitMix64: a counter-based generator. The k-th output (k = 1, 2, ...)
/// of a stream seeded with s is mix(s + k * 0x9E3779B97F4A7C15) (mod 2^64),
/// where mix(z) applies
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

struct ShotRecord {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Multinomial draw by inverse CDF: each shot takes one SplitMix64 output x,
/// forms u = (x >> 11) * 2^-53 in [0, 1) and picks the first outcome whose
/// cumulative probability exceeds u.
ShotRecord sampleOutcomes(const ProbabilityVector& p, std::int64_t shots, std::uint64_t seed);

/// Seed for grid point `index` of a run seeded with `seed`: the
/// (index + 1)-th SplitMix64 output of the stream seeded with `seed`.
std::uint64_t deriveSubSeed(std::uint64_t seed, std::uint64_t index);

ProbabilityVector empiricalFrequencies(const ShotRecord& record);

/// Merge counts by the same partition used for coarse-graining p and t.
ShotRecord coarseGrainCounts(const ShotRecord& record, const Grouping& grouping);

/// Plug-in estimate: qdetFromStatistics on the empirical frequencies. The
/// plug-in Shannon entropy is biased low, so the estimate is biased high at
/// small shot counts.
double estimateQdet(const ShotRecord& record, const TVector& t, double outputEntropy);

}  // namespace qcert
