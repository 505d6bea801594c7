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

#include "qcert/cli.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qcert/certification.hpp"
#include "qcert/config.hpp"
#include "qcert/errors.hpp"
#include "qcert/report.hpp"
#include "qcert/sampling.hpp"
#include "qcert/sweep.hpp"

namespace qcert {

namespace {

struct CommonOptions {
  std::string config;
  std::string outPath;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
};

void emit(const Table& table, const std::string& outPath, std::ostream& out) {
  if (outPath.empty()) {
    writeCsv(out, table);
    return;
  }
  std::ofstream file(outPath, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file " + outPath);
  writeCsv(file, table);
  if (!file) throw InvalidArgument("failed writing " + outPath);
}

ExperimentConfig loadWithOverrides(const CommonOptions& opts) {
  ExperimentConfig cfg = loadConfig(opts.config);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.shots) cfg.shots = *opts.shots;
  return cfg;
}

void runCertifyCommand(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const CertifyReport report = runCertify(loadWithOverrides(opts));
  const CertificationResult& r = report.result;
  err << "probe    " << r.probeLabel << "\n"
      << "channel  " << r.channelLabel << "\n"
      << "S[E(rho)] = " << formatNumber(r.outputEntropy) << "  H(p) = " << formatNumber(r.probEntropy)
      << "  log2(t.p) = " << formatNumber(r.logTP) << "\n"
      << "Q_DET = " << formatNumber(r.qdet) << "  (private info >= " << formatNumber(r.privateLower)
      << ", C_E >= " << formatNumber(r.eaClassicalLower) << ")\n";
  if (report.estimate) {
    err << "finite-shot estimate (" << report.shots << " shots, plug-in, biased high) = "
        << formatNumber(*report.estimate) << "\n";
  }
  emit(certifyTable(report), opts.outPath, out);
}

void runSweepCommand(const CommonOptions& opts, std::ostream& out) {
  const SweepSpec spec = sweepSpecFromConfig(loadWithOverrides(opts));
  emit(sweepTable(spec, runSweep(spec)), opts.outPath, out);
}

void runSampleCommand(const CommonOptions& opts, std::ostream& out) {
  const ExperimentConfig cfg = loadWithOverrides(opts);
  if (cfg.shots == 0) throw ConfigError("sample: shots must be positive (use --shots)");
  if (cfg.shots > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("sample: shots out of range");
  }
  const Experiment ex = buildExperiment(cfg.channel, cfg.probe, cfg.povm);
  const ProbabilityVector p = outcomeProbabilities(ex.probe, ex.channel, ex.povm);
  const ShotRecord record =
      sampleOutcomes(p, static_cast<std::int64_t>(cfg.shots), deriveSubSeed(cfg.seed, 0));
  Table table;
  table.header = {"outcome", "label", "probability", "count"};
  for (std::size_t i = 0; i < p.size(); ++i) {
    table.rows.push_back({std::to_string(i), ex.povm.labels()[i], formatNumber(p[i]),
                          std::to_string(record.counts[i])});
  }
  emit(table, opts.outPath, out);
}

void runThresholdCommand(const std::string& family, std::size_t d, const std::string& outPath,
                         std::ostream& out, std::ostream& err) {
  const ChannelFamily fam = family == "erasure" ? ChannelFamily::Erasure : ChannelFamily::Depolarizing;
  const double threshold = thresholdFidelity(fam, d);
  // Values quoted in the literature for the qubit case.
  std::optional<double> reference;
  if (d == 2) reference = fam == ChannelFamily::Erasure ? 0.811 : 0.818;
  Table table;
  table.header = {"family", "d", "threshold", "reference"};
  table.rows.push_back({family, std::to_string(d), formatNumber(threshold), formatNumber(reference)});
  err << "computed threshold fidelity " << formatNumber(threshold);
  if (reference) err << " (reference value " << formatNumber(*reference) << ")";
  err << "\n";
  emit(table, outPath, out);
}

}  // namespace

int cliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify lower bounds on quantum channel capacities from measurement statistics",
               "qcert"};
  app.require_subcommand(1);

  CommonOptions certifyOpts;
  auto* certifyCmd = app.add_subcommand("certify", "Certify one configuration");
  CommonOptions sweepOpts;
  auto* sweepCmd = app.add_subcommand("sweep", "Run the sweep section of a configuration");
  CommonOptions sampleOpts;
  auto* sampleCmd = app.add_subcommand("sample", "Draw finite-shot outcome counts");
  for (auto [cmd, opts] : {std::pair{certifyCmd, &certifyOpts}, std::pair{sweepCmd, &sweepOpts},
                           std::pair{sampleCmd, &sampleOpts}}) {
    cmd->add_option("--config", opts->config, "JSON configuration file")->required();
    cmd->add_option("--out", opts->outPath, "Write CSV here instead of stdout");
    cmd->add_option("--seed", opts->seed, "Override the configured seed");
    cmd->add_option("--shots", opts->shots, "Override the configured shot count");
  }

  int which = 0;
  std::size_t figureSteps = 101;
  std::string figureOut;
  auto* figureCmd = app.add_subcommand("figure", "Reproduce figure data as CSV");
  figureCmd->add_option("--which", which, "Figure number")->required()->check(CLI::IsMember({1, 2}));
  figureCmd->add_option("--steps", figureSteps, "Grid points in p")->check(CLI::Range(2, 100001));
  figureCmd->add_option("--out", figureOut, "Write CSV here instead of stdout");

  std::string family;
  std::size_t thresholdDim = 2;
  std::string thresholdOut;
  auto* thresholdCmd = app.add_subcommand("threshold", "Fidelity below which nothing is certified");
  thresholdCmd->add_option("--family", family, "Channel family")
      ->required()
      ->check(CLI::IsMember({"depolarizing", "erasure"}));
  thresholdCmd->add_option("--d", thresholdDim, "Dimension")->check(CLI::Range(2, 64));
  thresholdCmd->add_option("--out", thresholdOut, "Write CSV here instead of stdout");

  std::vector<std::string> argv{"qcert"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*certifyCmd) {
      runCertifyCommand(certifyOpts, out, err);
    } else if (*sweepCmd) {
      runSweepCommand(sweepOpts, out);
    } else if (*sampleCmd) {
      runSampleCommand(sampleOpts, out);
    } else if (*figureCmd) {
      emit(figureTable(which, figureSteps), figureOut, out);
    } else if (*thresholdCmd) {
      runThresholdCommand(family, thresholdDim, thresholdOut, out, err);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace qcert
