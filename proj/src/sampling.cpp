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

#include "qcert/sampling.hpp"

#include <algorithm>

#include "qcert/certification.hpp"
#include "qcert/errors.hpp"

namespace qcert {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix(state_);
}

ShotRecord sampleOutcomes(const ProbabilityVector& p, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("sampleOutcomes: shots must be at least 1");
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  std::size_t lastSupported = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
    if (p[i] > 0.0) lastSupported = i;
  }

  ShotRecord record;
  record.counts.assign(p.size(), 0);
  record.shots = static_cast<std::uint64_t>(shots);
  record.seed = seed;
  SplitMix64 engine(seed);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Rounding can leave the last cumulative sum just below 1.
    const std::size_t i =
        it == cdf.end() ? lastSupported : static_cast<std::size_t>(it - cdf.begin());
    ++record.counts[i];
  }
  return record;
}

std::uint64_t deriveSubSeed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64::mix(seed + (index + 1) * kGolden);
}

ProbabilityVector empiricalFrequencies(const ShotRecord& record) {
  std::uint64_t total = 0;
  for (std::uint64_t c : record.counts) total += c;
  if (total == 0) throw InvalidArgument("empiricalFrequencies: no counts recorded");
  if (total != record.shots) {
    throw InvalidArgument("empiricalFrequencies: counts sum to " + std::to_string(total) +
                          " but the record claims " + std::to_string(record.shots) + " shots");
  }
  std::vector<double> freq;
  freq.reserve(record.counts.size());
  for (std::uint64_t c : record.counts) {
    freq.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return ProbabilityVector(std::move(freq));
}

ShotRecord coarseGrainCounts(const ShotRecord& record, const Grouping& grouping) {
  validateGrouping(grouping, record.counts.size());
  ShotRecord merged;
  merged.shots = record.shots;
  merged.seed = record.seed;
  for (const auto& group : grouping) {
    std::uint64_t c = 0;
    for (std::size_t i : group) c += record.counts[i];
    merged.counts.push_back(c);
  }
  return merged;
}

double estimateQdet(const ShotRecord& record, const TVector& t, double outputEntropy) {
  if (record.counts.size() != t.size()) {
    throw DimensionMismatch("estimateQdet: " + std::to_string(record.counts.size()) +
                            " outcomes but t has " + std::to_string(t.size()));
  }
  return qdetFromStatistics(empiricalFrequencies(record), t, outputEntropy);
}

}  // namespace qcert
