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

#include "qcert/sweep.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>

#include "qcert/sampling.hpp"

namespace qcert {

namespace {

std::string stringField(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_string()) return j.at(key).get<std::string>();
  return {};
}

std::optional<double> numberField(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_number()) return j.at(key).get<double>();
  return std::nullopt;
}

std::optional<std::size_t> dimField(const Json& j) {
  if (j.is_object() && j.contains("d") && j.at("d").is_number_integer() &&
      j.at("d").get<std::int64_t>() > 0) {
    return j.at("d").get<std::size_t>();
  }
  return std::nullopt;
}

std::optional<double> probeFidelity(const Json& probe) {
  const std::string type = stringField(probe, "type");
  if (type == "max_entangled") return 1.0;
  if (type == "isotropic") return numberField(probe, "F");
  return std::nullopt;
}

struct PointInputs {
  Json channel;
  Json probe;
};

PointInputs substitute(const SweepSpec& spec, double value) {
  PointInputs in{spec.channel, spec.probe};
  if (spec.variable == "p") {
    in.channel["p"] = value;
  } else {
    in.probe["F"] = value;
  }
  return in;
}

SweepRow evaluatePoint(const SweepSpec& spec, std::size_t k) {
  SweepRow row;
  row.value = gridValue(spec, k);
  const PointInputs in = substitute(spec, row.value);
  const Experiment ex = buildExperiment(in.channel, in.probe, spec.povm);
  const CertificationResult result = certify(ex.probe, ex.channel, ex.povm, spec.optimize);
  row.qdet = result.qdet;
  row.closedForm = closedFormQdet(in.channel, in.probe, spec.povm);
  row.exactCapacity = exactCapacity(in.channel);
  if (spec.shots > 0) {
    const ProbabilityVector p = outcomeProbabilities(ex.probe, ex.channel, ex.povm);
    const TVector t = computeTVector(ex.probe, ex.povm);
    const ShotRecord record =
        sampleOutcomes(p, static_cast<std::int64_t>(spec.shots), deriveSubSeed(spec.seed, k));
    row.estimate = estimateQdet(coarseGrainCounts(record, result.grouping),
                                coarseGrain(p, t, result.grouping).t, result.outputEntropy);
  }
  return row;
}

std::string joinGrouping(const CertificationResult& r) {
  std::string out;
  for (const std::string& label : r.outcomeLabels) {
    if (!out.empty()) out += ';';
    out += label;
  }
  return out;
}

}  // namespace

Experiment buildExperiment(const Json& channel, const Json& probe, const Json& povm) {
  BipartiteProbeState state = probeFromJson(probe);
  QuantumChannel ch = channelFromJson(channel);
  Povm measurement = povmFromJson(povm, state.d());
  return {std::move(state), std::move(ch), std::move(measurement)};
}

std::optional<double> closedFormQdet(const Json& channel, const Json& probe, const Json& povm) {
  const std::string channelType = stringField(channel, "type");
  const std::string povmType = stringField(povm, "type");
  const auto fidelity = probeFidelity(probe);
  const auto d = dimField(probe);
  const auto p = numberField(channel, "p");
  if (!fidelity || !d || !p || dimField(channel) != d) return std::nullopt;
  if (const auto povmDim = dimField(povm); povmDim && povmDim != d) return std::nullopt;
  if (channelType == "depolarizing" && povmType == "bell") {
    return depolarizingIsotropicQdet(*d, *p, *fidelity);
  }
  if (channelType == "erasure" && povmType == "erasure_adapted") {
    return erasureQdetClosedForm(*d, *p, *fidelity);
  }
  return std::nullopt;
}

std::optional<double> exactCapacity(const Json& channel) {
  if (stringField(channel, "type") != "erasure") return std::nullopt;
  const auto d = dimField(channel);
  const auto p = numberField(channel, "p");
  if (!d || !p) return std::nullopt;
  return erasureExactCapacity(*d, *p);
}

SweepSpec sweepSpecFromConfig(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: config has no \"sweep\" section");
  SweepSpec spec;
  spec.channel = cfg.channel;
  spec.probe = cfg.probe;
  spec.povm = cfg.povm;
  spec.variable = cfg.sweep->variable;
  spec.start = cfg.sweep->start;
  spec.stop = cfg.sweep->stop;
  spec.steps = cfg.sweep->steps;
  spec.optimize = cfg.optimize;
  spec.shots = cfg.shots;
  spec.seed = cfg.seed;
  return spec;
}

void validateSweepSpec(const SweepSpec& spec) {
  if (spec.steps < 2) throw ConfigError("sweep: steps must be at least 2");
  if (!(spec.start < spec.stop)) throw ConfigError("sweep: start must be below stop");
  if (spec.shots > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("sweep: shots out of range");
  }
  if (spec.variable == "p") {
    const std::string type = stringField(spec.channel, "type");
    if (type != "depolarizing" && type != "erasure") {
      throw ConfigError("sweep: variable p needs a depolarizing or erasure channel");
    }
    if (spec.start < 0.0 || spec.stop > 1.0) throw ConfigError("sweep: p must stay in [0, 1]");
  } else if (spec.variable == "F") {
    if (stringField(spec.probe, "type") != "isotropic") {
      throw ConfigError("sweep: variable F needs an isotropic probe");
    }
    const auto d = dimField(spec.probe);
    if (!d) throw ConfigError("sweep: isotropic probe needs \"d\"");
    if (spec.start < 1.0 / static_cast<double>(*d * *d) - 1e-12 || spec.stop > 1.0) {
      throw ConfigError("sweep: F must stay in [1/d^2, 1]");
    }
  } else {
    throw ConfigError("sweep: unknown variable \"" + spec.variable + "\" (expected p or F)");
  }
}

double gridValue(const SweepSpec& spec, std::size_t k) {
  if (k + 1 == spec.steps) return spec.stop;
  return spec.start +
         static_cast<double>(k) * (spec.stop - spec.start) / static_cast<double>(spec.steps - 1);
}

std::vector<SweepRow> runSweep(const SweepSpec& spec) {
  validateSweepSpec(spec);
  std::vector<SweepRow> rows(spec.steps);
  std::vector<std::exception_ptr> errors(spec.steps);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, spec.steps);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < spec.steps; k += workers) {
          try {
            rows[k] = evaluatePoint(spec, k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Table sweepTable(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  Table table;
  table.header = {spec.variable, "qdet", "qdet_closed_form", "exact_capacity", "qdet_estimate"};
  for (const SweepRow& row : rows) {
    table.rows.push_back({formatNumber(row.value), formatNumber(row.qdet),
                          formatNumber(row.closedForm), formatNumber(row.exactCapacity),
                          formatNumber(row.estimate)});
  }
  return table;
}

CertifyReport runCertify(const ExperimentConfig& cfg) {
  if (cfg.shots > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("certify: shots out of range");
  }
  const Experiment ex = buildExperiment(cfg.channel, cfg.probe, cfg.povm);
  CertifyReport report;
  report.result = certify(ex.probe, ex.channel, ex.povm, cfg.optimize);
  report.shots = cfg.shots;
  if (cfg.shots > 0) {
    const ProbabilityVector p = outcomeProbabilities(ex.probe, ex.channel, ex.povm);
    const TVector t = computeTVector(ex.probe, ex.povm);
    const ShotRecord record =
        sampleOutcomes(p, static_cast<std::int64_t>(cfg.shots), deriveSubSeed(cfg.seed, 0));
    report.estimate =
        estimateQdet(coarseGrainCounts(record, report.result.grouping),
                     coarseGrain(p, t, report.result.grouping).t, report.result.outputEntropy);
  }
  return report;
}

Table certifyTable(const CertifyReport& report) {
  const CertificationResult& r = report.result;
  Table table;
  table.header = {"probe",         "channel",      "outcomes",       "qdet",
                  "output_entropy", "prob_entropy", "log_tp",         "input_entropy",
                  "private_lower",  "ea_classical_lower", "shots",    "qdet_estimate"};
  table.rows.push_back({r.probeLabel, r.channelLabel, joinGrouping(r), formatNumber(r.qdet),
                        formatNumber(r.outputEntropy), formatNumber(r.probEntropy),
                        formatNumber(r.logTP), formatNumber(r.inputEntropy),
                        formatNumber(r.privateLower), formatNumber(r.eaClassicalLower),
                        std::to_string(report.shots), formatNumber(report.estimate)});
  return table;
}

Table figureTable(int which, std::size_t steps) {
  if (which != 1 && which != 2) throw ConfigError("figure: --which must be 1 or 2");
  static constexpr double kFidelities[] = {1.0, 0.98, 0.95, 0.90};
  static constexpr const char* kColumns[] = {"qdet_F1.00", "qdet_F0.98", "qdet_F0.95",
                                             "qdet_F0.90"};
  const bool erasure = which == 2;

  SweepSpec spec;
  spec.channel = {{"type", erasure ? "erasure" : "depolarizing"}, {"d", 2}, {"p", 0.0}};
  spec.povm = {{"type", erasure ? "erasure_adapted" : "bell"}, {"d", 2}};
  spec.variable = "p";
  spec.start = 0.0;
  spec.stop = erasure ? 0.5 : 0.25;
  spec.steps = steps;

  std::vector<std::vector<SweepRow>> curves;
  for (double f : kFidelities) {
    spec.probe = {{"type", "isotropic"}, {"d", 2}, {"F", f}};
    curves.push_back(runSweep(spec));
  }

  Table table;
  table.header = {"p"};
  table.header.insert(table.header.end(), std::begin(kColumns), std::end(kColumns));
  if (erasure) table.header.push_back("capacity");
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<std::string> row{formatNumber(curves.front()[k].value)};
    for (const auto& curve : curves) row.push_back(formatNumber(curve[k].qdet));
    if (erasure) row.push_back(formatNumber(curves.front()[k].exactCapacity));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qcert
