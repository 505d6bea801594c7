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
#include <string>
#include <vector>

#include "qcert/noise_models.hpp"
#include "qcert/numerics.hpp"

namespace qcert {

struct DecompositionTerm {
  double weight;
  ComplexMatrix op;
};

/// Convex pure-state decomposition sigma = sum_l a_l |A_l>><<A_l|. Need not
/// be spectral; the A_l need not be normalized individually, only
/// sum_l a_l Tr[A_l^dag A_l] = 1.
class PureDecomposition {
 public:
  explicit PureDecomposition(std::vector<DecompositionTerm> terms);

  std::size_t dim() const { return dim_; }
  const std::vector<DecompositionTerm>& terms() const { return terms_; }

  /// sum_l a_l |A_l>><<A_l| on C^d (x) C^d.
  ComplexMatrix assemble() const;

 private:
  std::size_t dim_ = 0;
  std::vector<DecompositionTerm> terms_;
};

/// Reference (x) system input state with the decomposition it was built
/// from. Reference and system have the same dimension d.
class BipartiteProbeState {
 public:
  BipartiteProbeState(PureDecomposition decomposition, std::string label);

  std::size_t d() const { return decomposition_.dim(); }
  const DensityMatrix& sigma() const { return sigma_; }
  const PureDecomposition& decomposition() const { return decomposition_; }
  const std::string& label() const { return label_; }

 private:
  PureDecomposition decomposition_;
  DensityMatrix sigma_;
  std::string label_;
};

/// (1/d)|I>><<I|
BipartiteProbeState maximallyEntangledProbe(std::size_t d);

/// (1/d) sum q_{mn} |U_{mn}>><<U_{mn}|
BipartiteProbeState bellDiagonalProbe(const WeylDistribution& q);

/// Bell-diagonal with q_{00} = F and q_{mn} = (1-F)/(d^2-1) elsewhere.
/// Requires 1/d^2 <= F <= 1.
BipartiteProbeState isotropicProbe(std::size_t d, double fidelity);

BipartiteProbeState customProbe(PureDecomposition decomposition, std::string label = "custom");

/// Probe from a bare density matrix on C^d (x) C^d, decomposed spectrally as
/// A_l = sqrt(lambda_l) mat(v_l) with unit weights.
BipartiteProbeState probeFromDensity(const DensityMatrix& sigma, std::size_t d,
                                     std::string label = "density");

/// rho = Tr_R[sigma]. Evaluated both as a partial trace and as
/// (sum_l a_l A_l^dag A_l)^T; a disagreement beyond tol::kRecon throws
/// ConsistencyError.
DensityMatrix reducedSystemState(const BipartiteProbeState& probe);

/// <<I|sigma|I>> / d
double maxEntangledFidelity(const BipartiteProbeState& probe);

}  // namespace qcert
