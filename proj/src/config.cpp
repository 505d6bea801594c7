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

#include "qcert/config.hpp"

#include <fstream>

namespace qcert {

namespace {

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string(where) + ": missing key \"" + key + "\"");
  }
  return j.at(key);
}

std::string typeOf(const Json& j, const char* where) {
  const Json& t = require(j, "type", where);
  if (!t.is_string()) throw ConfigError(std::string(where) + ": \"type\" must be a string");
  return t.get<std::string>();
}

double number(const Json& j, const char* key, const char* where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) throw ConfigError(std::string(where) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

std::size_t dimension(const Json& j, const char* key, const char* where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ConfigError(std::string(where) + ": \"" + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

// Accepts a d x d nested array or a flat array of d^2 numbers.
WeylDistribution weylGridFromJson(const Json& j, std::optional<std::size_t> d, const char* where) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(where) + ": grid must be an array");
  std::vector<double> flat;
  for (const Json& row : j) {
    if (row.is_array()) {
      for (const Json& v : row) flat.push_back(v.get<double>());
    } else {
      flat.push_back(row.get<double>());
    }
  }
  std::size_t side = 0;
  while (side * side < flat.size()) ++side;
  if (side * side != flat.size() || (d && *d != side)) {
    throw ConfigError(std::string(where) + ": grid does not have d^2 entries");
  }
  return WeylDistribution(side, std::move(flat));
}

std::optional<std::size_t> optionalDim(const Json& j, const char* where) {
  if (!j.contains("d")) return std::nullopt;
  return dimension(j, "d", where);
}

std::string labelOr(const Json& j, std::string fallback) {
  if (j.contains("label") && j.at("label").is_string()) return j.at("label").get<std::string>();
  return fallback;
}

}  // namespace

ComplexMatrix complexMatrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    throw ConfigError("matrix: expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row.at(static_cast<std::size_t>(c));
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

namespace {

QuantumChannel parseChannel(const Json& j) {
  constexpr const char* where = "channel";
  const std::string type = typeOf(j, where);
  if (type == "depolarizing") {
    return depolarizingChannel(dimension(j, "d", where), number(j, "p", where));
  }
  if (type == "erasure") {
    return erasureChannel(dimension(j, "d", where), number(j, "p", where));
  }
  if (type == "pauli") {
    const WeylDistribution probs = weylGridFromJson(require(j, "probs", where), optionalDim(j, where), where);
    const QuantumChannel ch = pauliChannel(probs);
    return QuantumChannel(ch.dimIn(), ch.dimOut(), ch.kraus(), labelOr(j, ch.label()));
  }
  if (type == "kraus") {
    const Json& list = require(j, "kraus", where);
    if (!list.is_array() || list.empty()) throw ConfigError("channel: \"kraus\" must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const Json& k : list) kraus.push_back(complexMatrixFromJson(k));
    const auto dimOut = j.contains("dim_out") ? dimension(j, "dim_out", where)
                                              : static_cast<std::size_t>(kraus.front().rows());
    const auto dimIn = j.contains("dim_in") ? dimension(j, "dim_in", where)
                                            : static_cast<std::size_t>(kraus.front().cols());
    return QuantumChannel(dimIn, dimOut, std::move(kraus), labelOr(j, "kraus"));
  }
  throw ConfigError("channel: unknown type \"" + type + "\"");
}

BipartiteProbeState parseProbe(const Json& j) {
  constexpr const char* where = "probe";
  const std::string type = typeOf(j, where);
  if (type == "max_entangled") return maximallyEntangledProbe(dimension(j, "d", where));
  if (type == "isotropic") return isotropicProbe(dimension(j, "d", where), number(j, "F", where));
  if (type == "bell_diagonal") {
    return bellDiagonalProbe(weylGridFromJson(require(j, "q", where), optionalDim(j, where), where));
  }
  if (type == "custom") {
    if (j.contains("density")) {
      const DensityMatrix sigma(complexMatrixFromJson(j.at("density")));
      return probeFromDensity(sigma, dimension(j, "d", where), labelOr(j, "custom"));
    }
    const Json& list = require(j, "terms", where);
    if (!list.is_array() || list.empty()) throw ConfigError("probe: \"terms\" must be a non-empty array");
    std::vector<DecompositionTerm> terms;
    for (const Json& t : list) {
      terms.push_back({number(t, "weight", "probe term"), complexMatrixFromJson(require(t, "op", "probe term"))});
    }
    return customProbe(PureDecomposition(std::move(terms)), labelOr(j, "custom"));
  }
  throw ConfigError("probe: unknown type \"" + type + "\"");
}

Povm parsePovm(const Json& j, std::size_t probeDim) {
  constexpr const char* where = "povm";
  const std::string type = typeOf(j, where);
  const std::size_t d = j.contains("d") ? dimension(j, "d", where) : probeDim;
  if (type == "bell") return bellPovm(d);
  if (type == "erasure_adapted") return erasurePovm(d);
  if (type == "custom") {
    const Json& list = require(j, "elements", where);
    if (!list.is_array() || list.empty()) throw ConfigError("povm: \"elements\" must be a non-empty array");
    std::vector<ComplexMatrix> elements;
    for (const Json& e : list) elements.push_back(complexMatrixFromJson(e));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    const auto dim = static_cast<std::size_t>(elements.front().rows());
    return Povm(dim, std::move(elements), std::move(labels));
  }
  throw ConfigError("povm: unknown type \"" + type + "\"");
}

template <typename F>
auto translateJsonErrors(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace

QuantumChannel channelFromJson(const Json& j) {
  return translateJsonErrors([&] { return parseChannel(j); });
}

BipartiteProbeState probeFromJson(const Json& j) {
  return translateJsonErrors([&] { return parseProbe(j); });
}

Povm povmFromJson(const Json& j, std::size_t probeDim) {
  return translateJsonErrors([&] { return parsePovm(j, probeDim); });
}

ExperimentConfig parseConfig(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  try {
    ExperimentConfig cfg;
    cfg.channel = require(doc, "channel", "config");
    cfg.probe = require(doc, "probe", "config");
    cfg.povm = require(doc, "povm", "config");
    if (doc.contains("shots")) {
      if (!doc["shots"].is_number_integer() || doc["shots"].get<std::int64_t>() < 0) {
        throw ConfigError("config: \"shots\" must be a non-negative integer");
      }
      cfg.shots = doc["shots"].get<std::uint64_t>();
    }
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0) {
        throw ConfigError("config: \"seed\" must be a non-negative integer");
      }
      cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("optimize")) cfg.optimize = doc["optimize"].get<bool>();
    if (doc.contains("sweep")) {
      const Json& s = doc["sweep"];
      SweepRange range;
      range.variable = require(s, "variable", "sweep").get<std::string>();
      range.start = number(s, "start", "sweep");
      range.stop = number(s, "stop", "sweep");
      range.steps = dimension(s, "steps", "sweep");
      cfg.sweep = range;
    }
    return cfg;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return parseConfig(doc);
}

}  // namespace qcert
