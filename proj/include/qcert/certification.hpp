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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcert/detection.hpp"
#include "qcert/noise_models.hpp"
#include "qcert/numerics.hpp"
#include "qcert/probe_states.hpp"

namespace qcert {

/// Entropy of (I_R (x) E) applied to the purification |sqrt(rho^T)>>.
double entropyExchange(const DensityMatrix& rho, const QuantumChannel& ch);

/// Same quantity computed from the purification |V sqrt(rho^T)>> for a
/// caller-chosen unitary V on the reference. The value does not depend on V;
/// this overload exists so that can be checked.
double entropyExchange(const DensityMatrix& rho, const QuantumChannel& ch,
                       const ComplexMatrix& purificationUnitary);

/// I_c(rho, E) = S[E(rho)] - S_e(rho, E). May be negative.
double coherentInformation(const DensityMatrix& rho, const QuantumChannel& ch);

/// outputEntropy - H(p) - log2(t . p). Throws DegenerateMeasurement when
/// t . p <= 0.
double qdetFromStatistics(const ProbabilityVector& p, const TVector& t, double outputEntropy);

struct CertificationResult {
  double qdet = 0.0;
  double outputEntropy = 0.0;  // S[E(rho)]
  double probEntropy = 0.0;    // H(p)
  double logTP = 0.0;          // log2(t . p)
  double inputEntropy = 0.0;   // S(rho)
  double privateLower = 0.0;   // lower bound on the private information
  double eaClassicalLower = 0.0;  // S(rho) + qdet, lower bound on C_E
  Grouping grouping;
  std::string probeLabel;
  std::string channelLabel;
  std::vector<std::string> outcomeLabels;  // after grouping
};

/// Runs the full certification: probabilities of the probe through the
/// channel, the t-vector, and S[E(rho)] from the model output. With
/// `optimize`, the best coarse-graining of the outcomes is searched (every
/// set partition for at most 6 outcomes, greedy pairwise merging otherwise).
/// The result is checked against the exact coherent information and a
/// violation of qdet <= I_c + 1e-9 throws ConsistencyError.
CertificationResult certify(const BipartiteProbeState& probe, const QuantumChannel& ch,
                            const Povm& povm, bool optimize);

struct GroupingSearchResult {
  Grouping grouping;
  double qdet;
};

/// Largest outputEntropy - H - log2(t . p) over coarse-grainings of (p, t).
/// The trivial partition is always a candidate.
GroupingSearchResult optimizeGrouping(const ProbabilityVector& p, const TVector& t,
                                      double outputEntropy);

/// Calls visit once for every set partition of {0, ..., n-1}.
void forEachPartition(std::size_t n, const std::function<void(const Grouping&)>& visit);

double hashingBound(std::size_t d, double p);

/// Effective error rate 1 - p'_{00} of an isotropic probe with fidelity F
/// through a depolarizing channel with parameter p.
double depolarizingIsotropicErrorRate(std::size_t d, double p, double fidelity);

double depolarizingIsotropicQdet(std::size_t d, double p, double fidelity);

double erasureQdetClosedForm(std::size_t d, double p, double fidelity);

/// (1 - 2p) log2 d for p <= 1/2, zero beyond.
double erasureExactCapacity(std::size_t d, double p);

enum class ChannelFamily { Depolarizing, Erasure };

/// Largest fidelity F for which max_p Q_DET(d, p, F) <= 0 under the family's
/// closed form, i.e. below which no p gives a certificate. Bisection on F to
/// 1e-6; the inner maximization over p uses a 2001-point grid refined by
/// golden-section search to 1e-8.
double thresholdFidelity(ChannelFamily family, std::size_t d);

/// max over p in [0, 1] of the family's closed-form Q_DET at fixed F.
double maxClosedFormQdet(ChannelFamily family, std::size_t d, double fidelity);

/// Intermediates of the Jensen step behind the entropy-exchange bound:
/// conditional probabilities p(i|j) over the support eigenvectors of the
/// purified output, r_i = sum_j p(i|j), the t-vector, and the probabilities
/// rebuilt as sum_j s_j p(i|j).
struct ConditionalBoundDiagnostic {
  std::vector<double> r;
  std::vector<double> t;
  std::vector<double> rebuiltP;
  std::vector<double> p;
  double maxExcess = 0.0;  // max_i (r_i - t_i)
};

ConditionalBoundDiagnostic diagnoseConditionalBound(const BipartiteProbeState& probe,
                                                    const QuantumChannel& ch, const Povm& povm,
                                                    const ComplexMatrix& purificationUnitary);

}  // namespace qcert
