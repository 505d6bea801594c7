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
#include <utility>
#include <vector>

#include "qcert/noise_models.hpp"
#include "qcert/numerics.hpp"
#include "qcert/probe_states.hpp"

namespace qcert {

/// POVM on reference (x) channel output. Elements are checked to be
/// Hermitian PSD and to sum to the identity within tol::kTracePreserving.
class Povm {
 public:
  Povm(std::size_t dimTotal, std::vector<ComplexMatrix> elements, std::vector<std::string> labels);

  std::size_t dimTotal() const { return dimTotal_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t dimTotal_;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

/// Channel-independent weights t_i, aligned with the POVM elements.
class TVector {
 public:
  explicit TVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const& { return values_; }
  // Returned by value from temporaries so range-for over a call result is safe.
  std::vector<double> values() && { return std::move(values_); }

  double dot(const ProbabilityVector& p) const;

 private:
  std::vector<double> values_;
};

/// Partition of outcome indices; each inner vector is one merged outcome.
using Grouping = std::vector<std::vector<std::size_t>>;

/// Right-hand side of the local expansion of a Bell projector,
///   (1/d^2) sum_{p,q} exp(2 pi i (n p - m q) / d) U_{pq} (x) U_{pq}^*,
/// which equals (1/d)|U_{mn}>><<U_{mn}|.
ComplexMatrix bellProjectorLocalForm(std::size_t d, std::size_t m, std::size_t n);

/// d^2 projectors (1/d)|U_{mn}>><<U_{mn}|, ordered m * d + n.
Povm bellPovm(std::size_t d);

/// POVM on C^d (x) (C^d (+) C) adapted to the erasure channel: the d^2 Bell
/// projectors on the unflagged block (indices 0 .. d^2-1, ordered as in
/// bellPovm) followed by |i><i| (x) |e><e| for i = 0 .. d-1.
Povm erasurePovm(std::size_t d);

/// p_i = Tr[(I_R (x) E)(sigma) Pi_i]
ProbabilityVector outcomeProbabilities(const BipartiteProbeState& probe, const QuantumChannel& ch,
                                       const Povm& povm);

/// Bell outcome distribution of a Bell-diagonal probe through a Pauli
/// channel, p'_{m,n} = sum_{l,s} p_{l,s} q_{m-l, n+s} with indices mod d,
/// ordered m * d + n.
ProbabilityVector pauliBellConvolution(const PauliChannelParams& pauli, const WeylDistribution& q);

/// t_i = Tr[(sum_l a_l A_l (rho^T)^+ A_l^dag (x) I_out) Pi_i]. The identity
/// acts on the channel output, whose dimension is povm.dimTotal() / d. Checks
/// the sum rule sum_i t_i = dimOut * rank(rho) and throws ConsistencyError
/// when it fails by more than 1e-8.
TVector computeTVector(const BipartiteProbeState& probe, const Povm& povm);

Grouping singletonGrouping(std::size_t n);

/// Throws InvalidArgument unless grouping partitions {0, ..., n-1} into
/// non-empty blocks.
void validateGrouping(const Grouping& grouping, std::size_t n);

struct CoarseGrained {
  ProbabilityVector p;
  TVector t;
};

/// Groupwise sums of p and t, i.e. the statistics of the merged POVM
/// Pi_G = sum_{i in G} Pi_i.
CoarseGrained coarseGrain(const ProbabilityVector& p, const TVector& t, const Grouping& grouping);

}  // namespace qcert
