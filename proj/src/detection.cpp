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

#include "qcert/detection.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

constexpr double kSumRuleTolerance = 1e-8;

std::string weylLabel(const char* prefix, std::size_t m, std::size_t n) {
  return std::string(prefix) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

}  // namespace

Povm::Povm(std::size_t dimTotal, std::vector<ComplexMatrix> elements,
           std::vector<std::string> labels)
    : dimTotal_(dimTotal), elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw InvalidState("Povm: no elements");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < elements_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != elements_.size()) {
    throw InvalidArgument("Povm: " + std::to_string(labels_.size()) + " labels for " +
                          std::to_string(elements_.size()) + " elements");
  }
  const auto n = static_cast<Eigen::Index>(dimTotal_);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    ComplexMatrix& e = elements_[i];
    if (e.rows() != n || e.cols() != n) {
      throw DimensionMismatch("Povm: element '" + labels_[i] + "' is not " +
                              std::to_string(dimTotal_) + "-square");
    }
    // hermitianEigen rejects non-Hermitian input.
    const SpectralDecomposition spec = hermitianEigen(e);
    if (spec.eigenvalues.back() < -tol::kPsd) {
      throw InvalidState("Povm: element '" + labels_[i] + "' is not positive semidefinite");
    }
    e = 0.5 * (e + e.adjoint()).eval();
    sum += e;
  }
  const double defect = (sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > tol::kTracePreserving) {
    std::ostringstream msg;
    msg << "Povm: elements do not sum to the identity (defect " << defect << ")";
    throw InvalidState(msg.str());
  }
}

TVector::TVector(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) {
    if (!std::isfinite(v) || v < -tol::kPsd) {
      throw InvalidState("TVector: entry " + std::to_string(v) + " is negative");
    }
    v = std::max(v, 0.0);
  }
}

double TVector::dot(const ProbabilityVector& p) const {
  if (p.size() != values_.size()) {
    throw DimensionMismatch("TVector::dot: lengths " + std::to_string(values_.size()) + " and " +
                            std::to_string(p.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * p[i];
  return s;
}

ComplexMatrix bellProjectorLocalForm(std::size_t d, std::size_t m, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(d * d);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      const std::size_t k = (n * p + (d - m) * q) % d;
      const Complex phase =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
      const ComplexMatrix u = weylUnitary(d, p, q);
      out += phase * kron(u, u.conjugate());
    }
  }
  return out / static_cast<double>(d * d);
}

Povm bellPovm(std::size_t d) {
  if (d < 2) throw DomainError("bellPovm: d must be at least 2");
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      ComplexMatrix projector = outerProduct(doubleKet(weylUnitary(d, m, n))) / static_cast<double>(d);
      const double gap = (projector - bellProjectorLocalForm(d, m, n)).cwiseAbs().maxCoeff();
      if (gap > tol::kRecon) {
        throw ConsistencyError("bellPovm: local expansion of " + weylLabel("bell", m, n) +
                               " differs from the projector");
      }
      elements.push_back(std::move(projector));
      labels.push_back(weylLabel("bell", m, n));
    }
  }
  return Povm(d * d, std::move(elements), std::move(labels));
}

Povm erasurePovm(std::size_t d) {
  if (d < 2) throw DomainError("erasurePovm: d must be at least 2");
  const auto dr = static_cast<Eigen::Index>(d);
  const Eigen::Index out = dr + 1;
  const Eigen::Index total = dr * out;
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      const ComplexVector ket = doubleKet(weylUnitary(d, m, n));
      ComplexVector embedded = ComplexVector::Zero(total);
      for (Eigen::Index a = 0; a < dr; ++a) {
        for (Eigen::Index k = 0; k < dr; ++k) embedded(a * out + k) = ket(a * dr + k);
      }
      elements.push_back(outerProduct(embedded) / static_cast<double>(d));
      labels.push_back(weylLabel("bell", m, n));
    }
  }
  for (Eigen::Index i = 0; i < dr; ++i) {
    ComplexMatrix flag = ComplexMatrix::Zero(total, total);
    flag(i * out + dr, i * out + dr) = 1.0;
    elements.push_back(std::move(flag));
    labels.push_back("flag(" + std::to_string(i) + ")");
  }
  return Povm(static_cast<std::size_t>(total), std::move(elements), std::move(labels));
}

ProbabilityVector outcomeProbabilities(const BipartiteProbeState& probe, const QuantumChannel& ch,
                                       const Povm& povm) {
  const std::size_t d = probe.d();
  if (ch.dimIn() != d) {
    throw DimensionMismatch("outcomeProbabilities: probe dimension " + std::to_string(d) +
                            " does not match channel input " + std::to_string(ch.dimIn()));
  }
  if (povm.dimTotal() != d * ch.dimOut()) {
    throw DimensionMismatch("outcomeProbabilities: POVM acts on dimension " +
                            std::to_string(povm.dimTotal()) + ", expected " +
                            std::to_string(d * ch.dimOut()));
  }
  const ComplexMatrix output = applyExtendedKraus(ch, probe.sigma().matrix(), d);
  std::vector<double> p;
  p.reserve(povm.size());
  for (const ComplexMatrix& e : povm.elements()) p.push_back((output * e).trace().real());
  return ProbabilityVector(std::move(p));
}

ProbabilityVector pauliBellConvolution(const PauliChannelParams& pauli, const WeylDistribution& q) {
  const std::size_t d = pauli.d();
  if (q.d() != d) {
    throw DimensionMismatch("pauliBellConvolution: grids of size " + std::to_string(d) + " and " +
                            std::to_string(q.d()));
  }
  std::vector<double> out(d * d, 0.0);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      double acc = 0.0;
      for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t s = 0; s < d; ++s) acc += pauli(l, s) * q((m + d - l) % d, (n + s) % d);
      }
      out[m * d + n] = acc;
    }
  }
  return ProbabilityVector(std::move(out));
}

TVector computeTVector(const BipartiteProbeState& probe, const Povm& povm) {
  const std::size_t d = probe.d();
  if (povm.dimTotal() % d != 0) {
    throw DimensionMismatch("computeTVector: POVM dimension " + std::to_string(povm.dimTotal()) +
                            " is not a multiple of " + std::to_string(d));
  }
  const std::size_t dimOut = povm.dimTotal() / d;
  const ComplexMatrix rhoT = reducedSystemState(probe).matrix().transpose();
  const ComplexMatrix rhoTPinv = pseudoInverse(rhoT);
  const std::size_t rank = numericalRank(rhoT);

  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix weight = ComplexMatrix::Zero(n, n);
  for (const DecompositionTerm& term : probe.decomposition().terms()) {
    weight += term.weight * term.op * rhoTPinv * term.op.adjoint();
  }
  const ComplexMatrix lifted = kron(weight, identityMatrix(dimOut));

  std::vector<double> t;
  t.reserve(povm.size());
  double sum = 0.0;
  for (const ComplexMatrix& e : povm.elements()) {
    t.push_back((lifted * e).trace().real());
    sum += t.back();
  }
  const double expected = static_cast<double>(dimOut * rank);
  if (std::abs(sum - expected) > kSumRuleTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(15) << "computeTVector: sum rule violated (sum " << sum << ", expected " << expected << ")";
    throw ConsistencyError(msg.str());
  }
  return TVector(std::move(t));
}

Grouping singletonGrouping(std::size_t n) {
  Grouping g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = {i};
  return g;
}

void validateGrouping(const Grouping& grouping, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (const auto& group : grouping) {
    if (group.empty()) throw InvalidArgument("grouping: empty group");
    for (std::size_t i : group) {
      if (i >= n) throw InvalidArgument("grouping: index " + std::to_string(i) + " out of range");
      if (seen[i]) throw InvalidArgument("grouping: index " + std::to_string(i) + " repeated");
      seen[i] = true;
      ++count;
    }
  }
  if (count != n) throw InvalidArgument("grouping: does not cover every outcome");
}

CoarseGrained coarseGrain(const ProbabilityVector& p, const TVector& t, const Grouping& grouping) {
  if (p.size() != t.size()) {
    throw DimensionMismatch("coarseGrain: p has " + std::to_string(p.size()) + " entries, t has " +
                            std::to_string(t.size()));
  }
  validateGrouping(grouping, p.size());
  std::vector<double> mergedP;
  std::vector<double> mergedT;
  mergedP.reserve(grouping.size());
  mergedT.reserve(grouping.size());
  for (const auto& group : grouping) {
    double sp = 0.0;
    double st = 0.0;
    for (std::size_t i : group) {
      sp += p[i];
      st += t[i];
    }
    mergedP.push_back(sp);
    mergedT.push_back(st);
  }
  return {ProbabilityVector(std::move(mergedP)), TVector(std::move(mergedT))};
}

}  // namespace qcert
