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

// Dense complex linear algebra for small bipartite systems.
//
// Bipartite index convention: the basis vector |n>_R |m>_S has index
// n * d_S + m, i.e. the reference is the first (slow) tensor factor. The
// double-ket |A>> = sum_{n,m} A_{nm} |n>|m> uses the same ordering, so
// (A (x) B)|C>> = |A C B^T>> and Tr_R |A>><<A| = (A^dag A)^T. Transposes and
// conjugates are always taken in this computational basis.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kOrtho = 1e-9;
inline constexpr double kPsd = 1e-10;
inline constexpr double kProb = 1e-9;
inline constexpr double kRecon = 1e-9;
inline constexpr double kTracePreserving = 1e-9;
// Eigenvalues at or below kPinvCutoff * lambda_max count as zero.
inline constexpr double kPinvCutoff = 1e-12;
}  // namespace tol

/// Throws InvalidState if any entry is NaN or infinite.
void requireFinite(const ComplexMatrix& m, std::string_view what);

/// Largest absolute entry of m - m^dag. Requires a square matrix.
double hermiticityDefect(const ComplexMatrix& m);

ComplexMatrix identityMatrix(std::size_t d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v><v|
ComplexMatrix outerProduct(const ComplexVector& v);

/// Eigenvalues in descending order with the matching eigenvectors as columns.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Dense Hermitian eigensolver. The input is symmetrized as (M + M^dag) / 2
/// after checking the Hermiticity defect against tol::kHermitian.
SpectralDecomposition hermitianEigen(const ComplexMatrix& m);

/// Unit-trace positive semidefinite Hermitian matrix. The stored matrix is
/// the symmetrized input.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix maximallyMixed(std::size_t d);
  static DensityMatrix pure(const ComplexVector& psi);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Entries clamped to [0, 1] after a tolerance check; the sum must be 1 to
/// within tol::kProb.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const& { return values_; }
  std::vector<double> values() && { return std::move(values_); }

 private:
  std::vector<double> values_;
};

/// Entropy in bits of a spectrum or distribution; 0 log 0 = 0. Entries in
/// [-tol::kPsd, 0) are treated as zero.
double entropyOfWeights(std::span<const double> weights);

double vonNeumannEntropy(const DensityMatrix& rho);
double shannonEntropy(const ProbabilityVector& p);
double binaryEntropy(double x);

ComplexVector doubleKet(const ComplexMatrix& a);
ComplexMatrix operatorFromDoubleKet(const ComplexVector& v, std::size_t d);
Complex innerProductDoubleKet(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partialTraceReference(const ComplexMatrix& m, std::size_t dimReference,
                                    std::size_t dimSystem);
ComplexMatrix partialTraceSystem(const ComplexMatrix& m, std::size_t dimReference,
                                 std::size_t dimSystem);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol::kPsd, 0) are clamped; anything more negative is an InvalidState.
ComplexMatrix matrixSqrt(const ComplexMatrix& m);

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix through its
/// spectrum: eigenvalues above tol::kPinvCutoff * lambda_max are inverted,
/// the rest are dropped.
ComplexMatrix pseudoInverse(const ComplexMatrix& m);

/// Number of eigenvalues above tol::kPinvCutoff * lambda_max. Uses the same
/// cutoff as pseudoInverse so that Tr[M^+ M] == rank.
std::size_t numericalRank(const ComplexMatrix& m);

}  // namespace qcert
