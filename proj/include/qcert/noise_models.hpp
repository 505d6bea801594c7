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

#include "qcert/numerics.hpp"

namespace qcert {

/// Weyl (generalized Pauli) unitary
///   U_{mn} = sum_k exp(2 pi i k m / d) |k><(k + n) mod d|.
/// For d = 2, U_{10} = Z and U_{01} = X.
ComplexMatrix weylUnitary(std::size_t d, std::size_t m, std::size_t n);

/// Probability grid over Weyl labels (m, n), stored row-major at m * d + n.
/// Used both for Pauli channel weights p_{m,n} and for Bell-diagonal probe
/// weights q_{m,n}.
class WeylDistribution {
 public:
  WeylDistribution(std::size_t d, std::vector<double> values);

  static WeylDistribution delta(std::size_t d);
  static WeylDistribution uniform(std::size_t d);
  /// Mass 1 - p on (0, 0), p / (d^2 - 1) everywhere else.
  static WeylDistribution depolarizing(std::size_t d, double p);

  std::size_t d() const { return d_; }
  double operator()(std::size_t m, std::size_t n) const { return values_[m * d_ + n]; }
  const std::vector<double>& values() const& { return values_; }
  std::vector<double> values() && { return std::move(values_); }

 private:
  std::size_t d_;
  std::vector<double> values_;
};

using PauliChannelParams = WeylDistribution;

/// CPTP map given by Kraus operators K_k of shape dimOut x dimIn. Trace
/// preservation is checked on construction.
class QuantumChannel {
 public:
  QuantumChannel(std::size_t dimIn, std::size_t dimOut, std::vector<ComplexMatrix> kraus,
                 std::string label);

  std::size_t dimIn() const { return dimIn_; }
  std::size_t dimOut() const { return dimOut_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t dimIn_;
  std::size_t dimOut_;
  std::vector<ComplexMatrix> kraus_;
  std::string label_;
};

QuantumChannel identityChannel(std::size_t d);

/// Kraus operators sqrt(p_{mn}) U_{mn}; zero-weight terms are omitted.
QuantumChannel pauliChannel(const PauliChannelParams& params);

QuantumChannel depolarizingChannel(std::size_t d, double p);

/// Output space is C^d (+) C with the erasure flag |e> at index d. Kraus
/// operators: sqrt(1-p) * embedding, and sqrt(p) |e><i| for each i.
QuantumChannel erasureChannel(std::size_t d, double p);

/// sum_k K rho K^dag
ComplexMatrix applyKraus(const QuantumChannel& ch, const ComplexMatrix& rho);

DensityMatrix applyChannel(const QuantumChannel& ch, const DensityMatrix& rho);

/// (I_R (x) E)(sigma) where sigma lives on C^dimReference (x) C^dimIn.
ComplexMatrix applyExtendedKraus(const QuantumChannel& ch, const ComplexMatrix& sigma,
                                 std::size_t dimReference);

DensityMatrix applyExtendedChannel(const QuantumChannel& ch, const DensityMatrix& sigma,
                                   std::size_t dimReference);

}  // namespace qcert
