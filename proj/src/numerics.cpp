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

#include "qcert/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

void requireSquare(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Spectrum with negative drift clamped; throws if an eigenvalue is more
// negative than tol::kPsd.
SpectralDecomposition psdSpectrum(const ComplexMatrix& m, std::string_view what) {
  SpectralDecomposition spec = hermitianEigen(m);
  for (double& lambda : spec.eigenvalues) {
    if (lambda < -tol::kPsd) {
      throw InvalidState(std::string(what) + ": matrix is not positive semidefinite (eigenvalue " +
                         std::to_string(lambda) + ")");
    }
    lambda = std::max(lambda, 0.0);
  }
  return spec;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

void requireFinite(const ComplexMatrix& m, std::string_view what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidState(std::string(what) + ": non-finite entry");
    }
  }
}

double hermiticityDefect(const ComplexMatrix& m) {
  requireSquare(m, "hermiticityDefect");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix identityMatrix(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix outerProduct(const ComplexVector& v) { return v * v.adjoint(); }

SpectralDecomposition hermitianEigen(const ComplexMatrix& m) {
  requireSquare(m, "hermitianEigen");
  requireFinite(m, "hermitianEigen");
  if (hermiticityDefect(m) > tol::kHermitian) {
    throw InvalidState("hermitianEigen: matrix is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitianEigen: eigensolver did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  const Eigen::Index n = sym.rows();
  SpectralDecomposition out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  requireSquare(m, "DensityMatrix");
  requireFinite(m, "DensityMatrix");
  if (hermiticityDefect(m) > tol::kHermitian) {
    throw InvalidState("DensityMatrix: matrix is not Hermitian");
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const Complex trace = matrix_.trace();
  if (std::abs(trace - Complex(1.0, 0.0)) > tol::kTrace) {
    throw InvalidState("DensityMatrix: trace is " + std::to_string(trace.real()) + ", expected 1");
  }
  psdSpectrum(matrix_, "DensityMatrix");
}

DensityMatrix DensityMatrix::maximallyMixed(std::size_t d) {
  return DensityMatrix(identityMatrix(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidState("DensityMatrix::pure: zero vector");
  return DensityMatrix(outerProduct(psi / norm));
}

ProbabilityVector::ProbabilityVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidState("ProbabilityVector: empty");
  double sum = 0.0;
  for (double& v : values_) {
    if (!std::isfinite(v) || v < -tol::kProb || v > 1.0 + tol::kProb) {
      throw InvalidState("ProbabilityVector: entry " + std::to_string(v) + " outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::kProb) {
    throw InvalidState("ProbabilityVector: entries sum to " + std::to_string(sum));
  }
}

double entropyOfWeights(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) {
    if (w < -tol::kPsd) throw InvalidState("entropy: negative weight " + std::to_string(w));
    h -= xlog2x(w);
  }
  return std::max(h, 0.0);
}

double vonNeumannEntropy(const DensityMatrix& rho) {
  const SpectralDecomposition spec = psdSpectrum(rho.matrix(), "vonNeumannEntropy");
  const double h = entropyOfWeights(spec.eigenvalues);
  return std::min(h, std::log2(static_cast<double>(rho.dim())));
}

double shannonEntropy(const ProbabilityVector& p) { return entropyOfWeights(p.values()); }

double binaryEntropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binaryEntropy: argument " + std::to_string(x) + " outside [0, 1]");
  }
  return -xlog2x(x) - xlog2x(1.0 - x);
}

ComplexVector doubleKet(const ComplexMatrix& a) {
  requireSquare(a, "doubleKet");
  const Eigen::Index d = a.rows();
  ComplexVector v(d * d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) v(n * d + m) = a(n, m);
  }
  return v;
}

ComplexMatrix operatorFromDoubleKet(const ComplexVector& v, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (d == 0 || v.size() != n * n) {
    throw DimensionMismatch("operatorFromDoubleKet: vector length " + std::to_string(v.size()) +
                            " is not " + std::to_string(d) + "^2");
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) a(r, c) = v(r * n + c);
  }
  return a;
}

Complex innerProductDoubleKet(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("innerProductDoubleKet: operand shapes differ");
  }
  return doubleKet(a).dot(doubleKet(b));
}

ComplexMatrix partialTraceReference(const ComplexMatrix& m, std::size_t dimReference,
                                    std::size_t dimSystem) {
  const auto dr = static_cast<Eigen::Index>(dimReference);
  const auto ds = static_cast<Eigen::Index>(dimSystem);
  if (dr == 0 || ds == 0 || m.rows() != dr * ds || m.cols() != dr * ds) {
    throw DimensionMismatch("partialTraceReference: matrix is not (" +
                            std::to_string(dimReference) + "*" + std::to_string(dimSystem) +
                            ")-square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
  for (Eigen::Index n = 0; n < dr; ++n) out += m.block(n * ds, n * ds, ds, ds);
  return out;
}

ComplexMatrix partialTraceSystem(const ComplexMatrix& m, std::size_t dimReference,
                                 std::size_t dimSystem) {
  const auto dr = static_cast<Eigen::Index>(dimReference);
  const auto ds = static_cast<Eigen::Index>(dimSystem);
  if (dr == 0 || ds == 0 || m.rows() != dr * ds || m.cols() != dr * ds) {
    throw DimensionMismatch("partialTraceSystem: matrix is not (" + std::to_string(dimReference) +
                            "*" + std::to_string(dimSystem) + ")-square");
  }
  ComplexMatrix out(dr, dr);
  for (Eigen::Index a = 0; a < dr; ++a) {
    for (Eigen::Index b = 0; b < dr; ++b) out(a, b) = m.block(a * ds, b * ds, ds, ds).trace();
  }
  return out;
}

ComplexMatrix matrixSqrt(const ComplexMatrix& m) {
  const SpectralDecomposition spec = psdSpectrum(m, "matrixSqrt");
  Eigen::VectorXd roots(static_cast<Eigen::Index>(spec.eigenvalues.size()));
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    roots(static_cast<Eigen::Index>(k)) = std::sqrt(spec.eigenvalues[k]);
  }
  const ComplexMatrix& v = spec.eigenvectors;
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix pseudoInverse(const ComplexMatrix& m) {
  const SpectralDecomposition spec = psdSpectrum(m, "pseudoInverse");
  const double cutoff = tol::kPinvCutoff * spec.eigenvalues.front();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.eigenvalues.size()));
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues[k] > cutoff) inv(static_cast<Eigen::Index>(k)) = 1.0 / spec.eigenvalues[k];
  }
  const ComplexMatrix& v = spec.eigenvectors;
  return v * inv.cast<Complex>().asDiagonal() * v.adjoint();
}

std::size_t numericalRank(const ComplexMatrix& m) {
  const SpectralDecomposition spec = psdSpectrum(m, "numericalRank");
  const double cutoff = tol::kPinvCutoff * spec.eigenvalues.front();
  return static_cast<std::size_t>(std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                                [cutoff](double l) { return l > cutoff; }));
}

}  // namespace qcert
