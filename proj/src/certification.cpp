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

#include "qcert/certification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

constexpr double kBoundSlack = 1e-9;

void requireDim(std::size_t d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": d must be at least 2");
}

void requireProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": probability " << p << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

void requireFidelity(std::size_t d, double f, const char* what) {
  const double lo = 1.0 / static_cast<double>(d * d);
  if (!(f >= lo - 1e-12 && f <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": fidelity " << f << " outside [1/d^2, 1]";
    throw DomainError(msg.str());
  }
}

double log2(std::size_t x) { return std::log2(static_cast<double>(x)); }

// Q_DET of grouped statistics, -inf when t.p vanishes.
double groupedQdet(const ProbabilityVector& p, const TVector& t, double outputEntropy,
                   const Grouping& grouping) {
  const CoarseGrained merged = coarseGrain(p, t, grouping);
  const double tp = merged.t.dot(merged.p);
  if (!(tp > 0.0)) return -std::numeric_limits<double>::infinity();
  return outputEntropy - shannonEntropy(merged.p) - std::log2(tp);
}

void partitionRecurse(std::size_t next, std::size_t n, Grouping& current,
                      const std::function<void(const Grouping&)>& visit) {
  if (next == n) {
    visit(current);
    return;
  }
  for (std::size_t g = 0; g < current.size(); ++g) {
    current[g].push_back(next);
    partitionRecurse(next + 1, n, current, visit);
    current[g].pop_back();
  }
  current.push_back({next});
  partitionRecurse(next + 1, n, current, visit);
  current.pop_back();
}

double closedForm(ChannelFamily family, std::size_t d, double p, double fidelity) {
  switch (family) {
    case ChannelFamily::Depolarizing:
      return depolarizingIsotropicQdet(d, p, fidelity);
    case ChannelFamily::Erasure:
      return erasureQdetClosedForm(d, p, fidelity);
  }
  throw DomainError("unsupported channel family");
}

}  // namespace

double entropyExchange(const DensityMatrix& rho, const QuantumChannel& ch) {
  return entropyExchange(rho, ch, identityMatrix(rho.dim()));
}

double entropyExchange(const DensityMatrix& rho, const QuantumChannel& ch,
                       const ComplexMatrix& purificationUnitary) {
  const std::size_t d = rho.dim();
  if (ch.dimIn() != d) {
    throw DimensionMismatch("entropyExchange: state dimension " + std::to_string(d) +
                            " does not match channel input " + std::to_string(ch.dimIn()));
  }
  const auto n = static_cast<Eigen::Index>(d);
  if (purificationUnitary.rows() != n || purificationUnitary.cols() != n) {
    throw DimensionMismatch("entropyExchange: purification unitary has the wrong size");
  }
  if ((purificationUnitary.adjoint() * purificationUnitary - ComplexMatrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff() > tol::kRecon) {
    throw InvalidArgument("entropyExchange: purification operator is not unitary");
  }
  const ComplexVector psi = doubleKet(purificationUnitary * matrixSqrt(rho.matrix().transpose()));
  const DensityMatrix joint(applyExtendedKraus(ch, outerProduct(psi), d));
  return vonNeumannEntropy(joint);
}

double coherentInformation(const DensityMatrix& rho, const QuantumChannel& ch) {
  return vonNeumannEntropy(applyChannel(ch, rho)) - entropyExchange(rho, ch);
}

double qdetFromStatistics(const ProbabilityVector& p, const TVector& t, double outputEntropy) {
  const double tp = t.dot(p);
  if (!(tp > 0.0)) {
    throw DegenerateMeasurement("qdetFromStatistics: t.p = " + std::to_string(tp));
  }
  return outputEntropy - shannonEntropy(p) - std::log2(tp);
}

void forEachPartition(std::size_t n, const std::function<void(const Grouping&)>& visit) {
  Grouping current;
  partitionRecurse(0, n, current, visit);
}

GroupingSearchResult optimizeGrouping(const ProbabilityVector& p, const TVector& t,
                                      double outputEntropy) {
  constexpr std::size_t kExhaustiveLimit = 6;
  GroupingSearchResult best{singletonGrouping(p.size()),
                            groupedQdet(p, t, outputEntropy, singletonGrouping(p.size()))};
  if (p.size() <= kExhaustiveLimit) {
    forEachPartition(p.size(), [&](const Grouping& g) {
      const double q = groupedQdet(p, t, outputEntropy, g);
      if (q > best.qdet) best = {g, q};
    });
    return best;
  }
  // Greedy: keep taking the best pairwise merge while it improves.
  for (;;) {
    GroupingSearchResult round = best;
    const Grouping& current = best.grouping;
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        Grouping candidate;
        candidate.reserve(current.size() - 1);
        for (std::size_t g = 0; g < current.size(); ++g) {
          if (g == b) continue;
          candidate.push_back(current[g]);
          if (g == a) {
            candidate.back().insert(candidate.back().end(), current[b].begin(), current[b].end());
          }
        }
        const double q = groupedQdet(p, t, outputEntropy, candidate);
        if (q > round.qdet) round = {std::move(candidate), q};
      }
    }
    if (!(round.qdet > best.qdet)) break;
    best = std::move(round);
  }
  return best;
}

CertificationResult certify(const BipartiteProbeState& probe, const QuantumChannel& ch,
                            const Povm& povm, bool optimize) {
  const DensityMatrix rho = reducedSystemState(probe);
  const ProbabilityVector p = outcomeProbabilities(probe, ch, povm);
  const TVector t = computeTVector(probe, povm);

  CertificationResult result;
  result.outputEntropy = vonNeumannEntropy(applyChannel(ch, rho));
  result.inputEntropy = vonNeumannEntropy(rho);
  result.grouping = optimize ? optimizeGrouping(p, t, result.outputEntropy).grouping
                             : singletonGrouping(p.size());

  const CoarseGrained merged = coarseGrain(p, t, result.grouping);
  result.probEntropy = shannonEntropy(merged.p);
  const double tp = merged.t.dot(merged.p);
  if (!(tp > 0.0)) throw DegenerateMeasurement("certify: t.p = " + std::to_string(tp));
  result.logTP = std::log2(tp);
  result.qdet = result.outputEntropy - result.probEntropy - result.logTP;
  result.privateLower = result.qdet;
  result.eaClassicalLower = result.inputEntropy + result.qdet;
  result.probeLabel = probe.label();
  result.channelLabel = ch.label();
  for (const auto& group : result.grouping) {
    std::string label;
    for (std::size_t i : group) {
      if (!label.empty()) label += "+";
      label += povm.labels()[i];
    }
    result.outcomeLabels.push_back(std::move(label));
  }

  const double ic = result.outputEntropy - entropyExchange(rho, ch);
  if (result.qdet > ic + kBoundSlack) {
    std::ostringstream msg;
    msg << std::setprecision(15) << "certify: Q_DET " << result.qdet << " exceeds coherent information " << ic;
    throw ConsistencyError(msg.str());
  }
  return result;
}

double hashingBound(std::size_t d, double p) {
  requireDim(d, "hashingBound");
  requireProbability(p, "hashingBound");
  return log2(d) - binaryEntropy(p) - p * log2(d * d - 1);
}

double depolarizingIsotropicErrorRate(std::size_t d, double p, double fidelity) {
  requireDim(d, "depolarizingIsotropicErrorRate");
  requireProbability(p, "depolarizingIsotropicErrorRate");
  requireFidelity(d, fidelity, "depolarizingIsotropicErrorRate");
  const double d2 = static_cast<double>(d * d);
  const double rate = (d2 * (1.0 - fidelity * (1.0 - p)) + fidelity - p - 1.0) / (d2 - 1.0);
  return std::clamp(rate, 0.0, 1.0);
}

double depolarizingIsotropicQdet(std::size_t d, double p, double fidelity) {
  return hashingBound(d, depolarizingIsotropicErrorRate(d, p, fidelity));
}

double erasureQdetClosedForm(std::size_t d, double p, double fidelity) {
  requireDim(d, "erasureQdetClosedForm");
  requireProbability(p, "erasureQdetClosedForm");
  requireFidelity(d, fidelity, "erasureQdetClosedForm");
  const double f = std::min(fidelity, 1.0);
  return (1.0 - 2.0 * p) * log2(d) -
         (1.0 - p) * (binaryEntropy(f) + (1.0 - f) * log2(d * d - 1));
}

double erasureExactCapacity(std::size_t d, double p) {
  requireDim(d, "erasureExactCapacity");
  requireProbability(p, "erasureExactCapacity");
  return std::max(0.0, 1.0 - 2.0 * p) * log2(d);
}

double maxClosedFormQdet(ChannelFamily family, std::size_t d, double fidelity) {
  constexpr int kGridIntervals = 2000;
  constexpr double kGoldenTolerance = 1e-8;
  auto value = [&](double p) { return closedForm(family, d, p, fidelity); };

  int bestIndex = 0;
  double best = value(0.0);
  for (int k = 1; k <= kGridIntervals; ++k) {
    const double v = value(static_cast<double>(k) / kGridIntervals);
    if (v > best) {
      best = v;
      bestIndex = k;
    }
  }
  double lo = std::max(0, bestIndex - 1) / static_cast<double>(kGridIntervals);
  double hi = std::min(kGridIntervals, bestIndex + 1) / static_cast<double>(kGridIntervals);
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invPhi * (hi - lo);
  double x2 = lo + invPhi * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = value(x1);
    }
  }
  return std::max({best, f1, f2});
}

double thresholdFidelity(ChannelFamily family, std::size_t d) {
  requireDim(d, "thresholdFidelity");
  constexpr double kBisectionTolerance = 1e-6;
  // max_p Q_DET is -log2 d at F = 1/d^2 and log2 d at F = 1.
  double lo = 1.0 / static_cast<double>(d * d);
  double hi = 1.0;
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (maxClosedFormQdet(family, d, mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ConditionalBoundDiagnostic diagnoseConditionalBound(const BipartiteProbeState& probe,
                                                    const QuantumChannel& ch, const Povm& povm,
                                                    const ComplexMatrix& purificationUnitary) {
  const std::size_t d = probe.d();
  const auto n = static_cast<Eigen::Index>(d);
  const ComplexMatrix rhoT = reducedSystemState(probe).matrix().transpose();

  // (rho^T)^{-1/2} on the support, with the same cutoff as the t-vector.
  const SpectralDecomposition spec = hermitianEigen(rhoT);
  const double cutoff = tol::kPinvCutoff * spec.eigenvalues.front();
  ComplexMatrix invSqrt = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues[k] <= cutoff) continue;
    const ComplexVector v = spec.eigenvectors.col(static_cast<Eigen::Index>(k));
    invSqrt += outerProduct(v) / std::sqrt(spec.eigenvalues[k]);
  }

  const ComplexVector psi = doubleKet(purificationUnitary * matrixSqrt(rhoT));
  const ComplexMatrix joint = applyExtendedKraus(ch, outerProduct(psi), d);
  const SpectralDecomposition out = hermitianEigen(joint);
  const std::size_t dimOut = ch.dimOut();
  const ComplexMatrix idOut = identityMatrix(dimOut);

  std::vector<ComplexMatrix> lifts;
  for (const DecompositionTerm& term : probe.decomposition().terms()) {
    if (term.weight == 0.0) continue;
    lifts.push_back(kron(term.op * invSqrt * purificationUnitary.adjoint(), idOut));
  }

  ConditionalBoundDiagnostic diag;
  diag.r.assign(povm.size(), 0.0);
  diag.rebuiltP.assign(povm.size(), 0.0);
  const double outCutoff = tol::kPinvCutoff * out.eigenvalues.front();
  for (std::size_t j = 0; j < out.eigenvalues.size(); ++j) {
    const double s = out.eigenvalues[j];
    if (s <= outCutoff) continue;
    const ComplexVector phi = out.eigenvectors.col(static_cast<Eigen::Index>(j));
    for (std::size_t i = 0; i < povm.size(); ++i) {
      double cond = 0.0;
      std::size_t l = 0;
      for (const DecompositionTerm& term : probe.decomposition().terms()) {
        if (term.weight == 0.0) continue;
        const ComplexVector mapped = lifts[l++] * phi;
        cond += term.weight * mapped.dot(povm.elements()[i] * mapped).real();
      }
      diag.r[i] += cond;
      diag.rebuiltP[i] += s * cond;
    }
  }
  diag.t = computeTVector(probe, povm).values();
  const ProbabilityVector p = outcomeProbabilities(probe, ch, povm);
  diag.p.assign(p.values().begin(), p.values().end());
  diag.maxExcess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    diag.maxExcess = std::max(diag.maxExcess, diag.r[i] - diag.t[i]);
  }
  return diag;
}

}  // namespace qcert
