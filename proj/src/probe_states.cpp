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

#include "qcert/probe_states.hpp"

#include <cmath>
#include <sstream>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

std::string formatParam(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

PureDecomposition::PureDecomposition(std::vector<DecompositionTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidState("PureDecomposition: no terms");
  dim_ = static_cast<std::size_t>(terms_.front().op.rows());
  double norm = 0.0;
  for (const DecompositionTerm& term : terms_) {
    if (term.op.rows() != term.op.cols() ||
        static_cast<std::size_t>(term.op.rows()) != dim_ || dim_ == 0) {
      throw DimensionMismatch("PureDecomposition: all operators must be square of equal size");
    }
    requireFinite(term.op, "PureDecomposition");
    if (!std::isfinite(term.weight) || term.weight < 0.0) {
      throw InvalidState("PureDecomposition: weight " + formatParam(term.weight) +
                         " is negative");
    }
    norm += term.weight * term.op.squaredNorm();
  }
  if (std::abs(norm - 1.0) > tol::kProb) {
    throw InvalidState("PureDecomposition: sum_l a_l Tr[A_l^dag A_l] = " + formatParam(norm));
  }
}

ComplexMatrix PureDecomposition::assemble() const {
  const auto n = static_cast<Eigen::Index>(dim_ * dim_);
  ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
  for (const DecompositionTerm& term : terms_) {
    if (term.weight == 0.0) continue;
    sigma += term.weight * outerProduct(doubleKet(term.op));
  }
  return sigma;
}

BipartiteProbeState::BipartiteProbeState(PureDecomposition decomposition, std::string label)
    : decomposition_(std::move(decomposition)),
      sigma_(decomposition_.assemble()),
      label_(std::move(label)) {}

BipartiteProbeState maximallyEntangledProbe(std::size_t d) {
  if (d < 2) throw DomainError("maximallyEntangledProbe: d must be at least 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  return BipartiteProbeState(PureDecomposition({{1.0, identityMatrix(d) * scale}}),
                             "max_entangled(d=" + std::to_string(d) + ")");
}

BipartiteProbeState bellDiagonalProbe(const WeylDistribution& q) {
  const std::size_t d = q.d();
  if (d < 2) throw DomainError("bellDiagonalProbe: d must be at least 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<DecompositionTerm> terms;
  terms.reserve(d * d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) terms.push_back({q(m, n), weylUnitary(d, m, n) * scale});
  }
  return BipartiteProbeState(PureDecomposition(std::move(terms)),
                             "bell_diagonal(d=" + std::to_string(d) + ")");
}

BipartiteProbeState isotropicProbe(std::size_t d, double fidelity) {
  if (d < 2) throw DomainError("isotropicProbe: d must be at least 2");
  const double d2 = static_cast<double>(d * d);
  // Small slack so that F = 1/d^2 computed in floating point is accepted.
  if (!(fidelity >= 1.0 / d2 - 1e-12 && fidelity <= 1.0)) {
    throw DomainError("isotropicProbe: fidelity " + formatParam(fidelity) + " outside [1/d^2, 1]");
  }
  const double f = std::max(fidelity, 1.0 / d2);
  std::vector<double> q(d * d, (1.0 - f) / (d2 - 1.0));
  q[0] = f;
  const BipartiteProbeState bell = bellDiagonalProbe(WeylDistribution(d, std::move(q)));
  return BipartiteProbeState(bell.decomposition(), "isotropic(d=" + std::to_string(d) +
                                                       ",F=" + formatParam(fidelity) + ")");
}

BipartiteProbeState customProbe(PureDecomposition decomposition, std::string label) {
  return BipartiteProbeState(std::move(decomposition), std::move(label));
}

BipartiteProbeState probeFromDensity(const DensityMatrix& sigma, std::size_t d,
                                     std::string label) {
  if (d == 0 || sigma.dim() != d * d) {
    throw DimensionMismatch("probeFromDensity: state dimension " + std::to_string(sigma.dim()) +
                            " is not " + std::to_string(d) + "^2");
  }
  const SpectralDecomposition spec = hermitianEigen(sigma.matrix());
  const double cutoff = tol::kPinvCutoff * spec.eigenvalues.front();
  std::vector<DecompositionTerm> terms;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues[k];
    if (lambda <= cutoff) continue;
    const ComplexVector v = spec.eigenvectors.col(static_cast<Eigen::Index>(k));
    terms.push_back({1.0, std::sqrt(lambda) * operatorFromDoubleKet(v, d)});
  }
  // Renormalize the retained spectrum so dropped roundoff does not trip the
  // normalization check.
  double norm = 0.0;
  for (const DecompositionTerm& t : terms) norm += t.op.squaredNorm();
  for (DecompositionTerm& t : terms) t.weight = 1.0 / norm;
  return BipartiteProbeState(PureDecomposition(std::move(terms)), std::move(label));
}

DensityMatrix reducedSystemState(const BipartiteProbeState& probe) {
  const std::size_t d = probe.d();
  const ComplexMatrix traced = partialTraceReference(probe.sigma().matrix(), d, d);
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix fromTerms = ComplexMatrix::Zero(n, n);
  for (const DecompositionTerm& term : probe.decomposition().terms()) {
    fromTerms += term.weight * term.op.adjoint() * term.op;
  }
  fromTerms.transposeInPlace();
  const double gap = (traced - fromTerms).cwiseAbs().maxCoeff();
  if (gap > tol::kRecon) {
    throw ConsistencyError("reducedSystemState: partial trace and decomposition routes differ by " +
                           formatParam(gap));
  }
  return DensityMatrix(traced);
}

double maxEntangledFidelity(const BipartiteProbeState& probe) {
  const ComplexVector phi = doubleKet(identityMatrix(probe.d()));
  const Complex value = phi.dot(probe.sigma().matrix() * phi);
  return value.real() / static_cast<double>(probe.d());
}

}  // namespace qcert
