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

#include "qcert/noise_models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcert/errors.hpp"

namespace qcert {

namespace {

void requireUnitInterval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": probability " << p << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

std::string formatParam(double p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

}  // namespace

ComplexMatrix weylUnitary(std::size_t d, std::size_t m, std::size_t n) {
  if (d == 0 || m >= d || n >= d) {
    throw DomainError("weylUnitary: indices (" + std::to_string(m) + ", " + std::to_string(n) +
                      ") out of range for d = " + std::to_string(d));
  }
  const auto dim = static_cast<Eigen::Index>(d);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < d; ++k) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * m) % d) /
                         static_cast<double>(d);
    u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + n) % d)) = std::polar(1.0, phase);
  }
  return u;
}

WeylDistribution::WeylDistribution(std::size_t d, std::vector<double> values)
    : d_(d), values_(std::move(values)) {
  if (d_ == 0 || values_.size() != d_ * d_) {
    throw DimensionMismatch("WeylDistribution: expected " + std::to_string(d_ * d_) +
                            " weights, got " + std::to_string(values_.size()));
  }
  double sum = 0.0;
  for (double& v : values_) {
    if (!std::isfinite(v) || v < -tol::kProb) {
      throw DomainError("WeylDistribution: negative or non-finite weight " + formatParam(v));
    }
    v = std::max(v, 0.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::kProb) {
    throw DomainError("WeylDistribution: weights sum to " + formatParam(sum));
  }
}

WeylDistribution WeylDistribution::delta(std::size_t d) {
  std::vector<double> v(d * d, 0.0);
  if (!v.empty()) v[0] = 1.0;
  return WeylDistribution(d, std::move(v));
}

WeylDistribution WeylDistribution::uniform(std::size_t d) {
  return WeylDistribution(d, std::vector<double>(d * d, 1.0 / static_cast<double>(d * d)));
}

WeylDistribution WeylDistribution::depolarizing(std::size_t d, double p) {
  requireUnitInterval(p, "depolarizing");
  if (d < 2) throw DomainError("depolarizing: d must be at least 2");
  std::vector<double> v(d * d, p / static_cast<double>(d * d - 1));
  v[0] = 1.0 - p;
  return WeylDistribution(d, std::move(v));
}

QuantumChannel::QuantumChannel(std::size_t dimIn, std::size_t dimOut,
                               std::vector<ComplexMatrix> kraus, std::string label)
    : dimIn_(dimIn), dimOut_(dimOut), kraus_(std::move(kraus)), label_(std::move(label)) {
  if (dimIn_ == 0 || dimOut_ == 0) throw DimensionMismatch("QuantumChannel: zero dimension");
  if (kraus_.empty()) throw InvalidState("QuantumChannel: empty Kraus list");
  const auto rows = static_cast<Eigen::Index>(dimOut_);
  const auto cols = static_cast<Eigen::Index>(dimIn_);
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionMismatch("QuantumChannel: Kraus operator is " + std::to_string(k.rows()) +
                              "x" + std::to_string(k.cols()) + ", expected " +
                              std::to_string(dimOut_) + "x" + std::to_string(dimIn_));
    }
    requireFinite(k, "QuantumChannel");
    sum += k.adjoint() * k;
  }
  const double defect = (sum - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (defect > tol::kTracePreserving) {
    throw InvalidState("QuantumChannel '" + label_ + "': not trace preserving (defect " +
                       formatParam(defect) + ")");
  }
}

QuantumChannel identityChannel(std::size_t d) {
  return QuantumChannel(d, d, {identityMatrix(d)}, "identity");
}

QuantumChannel pauliChannel(const PauliChannelParams& params) {
  const std::size_t d = params.d();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      const double w = params(m, n);
      if (w > 0.0) kraus.push_back(std::sqrt(w) * weylUnitary(d, m, n));
    }
  }
  return QuantumChannel(d, d, std::move(kraus), "pauli(d=" + std::to_string(d) + ")");
}

QuantumChannel depolarizingChannel(std::size_t d, double p) {
  const QuantumChannel base = pauliChannel(WeylDistribution::depolarizing(d, p));
  return QuantumChannel(d, d, base.kraus(),
                        "depolarizing(d=" + std::to_string(d) + ",p=" + formatParam(p) + ")");
}

QuantumChannel erasureChannel(std::size_t d, double p) {
  requireUnitInterval(p, "erasureChannel");
  if (d == 0) throw DomainError("erasureChannel: d must be positive");
  const auto in = static_cast<Eigen::Index>(d);
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix keep = ComplexMatrix::Zero(in + 1, in);
  keep.topRows(in) = ComplexMatrix::Identity(in, in) * std::sqrt(1.0 - p);
  kraus.push_back(std::move(keep));
  if (p > 0.0) {
    for (Eigen::Index i = 0; i < in; ++i) {
      ComplexMatrix flag = ComplexMatrix::Zero(in + 1, in);
      flag(in, i) = std::sqrt(p);
      kraus.push_back(std::move(flag));
    }
  }
  return QuantumChannel(d, d + 1, std::move(kraus),
                        "erasure(d=" + std::to_string(d) + ",p=" + formatParam(p) + ")");
}

ComplexMatrix applyKraus(const QuantumChannel& ch, const ComplexMatrix& rho) {
  const auto in = static_cast<Eigen::Index>(ch.dimIn());
  if (rho.rows() != in || rho.cols() != in) {
    throw DimensionMismatch("applyChannel: state dimension " + std::to_string(rho.rows()) +
                            " does not match channel input " + std::to_string(ch.dimIn()));
  }
  const auto out = static_cast<Eigen::Index>(ch.dimOut());
  ComplexMatrix result = ComplexMatrix::Zero(out, out);
  for (const ComplexMatrix& k : ch.kraus()) result += k * rho * k.adjoint();
  return result;
}

DensityMatrix applyChannel(const QuantumChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(applyKraus(ch, rho.matrix()));
}

ComplexMatrix applyExtendedKraus(const QuantumChannel& ch, const ComplexMatrix& sigma,
                                 std::size_t dimReference) {
  const auto dr = static_cast<Eigen::Index>(dimReference);
  const auto in = static_cast<Eigen::Index>(ch.dimIn());
  const auto out = static_cast<Eigen::Index>(ch.dimOut());
  if (dr == 0 || sigma.rows() != dr * in || sigma.cols() != dr * in) {
    throw DimensionMismatch("applyExtendedChannel: state dimension " +
                            std::to_string(sigma.rows()) + " is not " +
                            std::to_string(dimReference) + "*" + std::to_string(ch.dimIn()));
  }
  // Block (a, b) of sigma is <a|sigma|b> on the system; I (x) K acts blockwise.
  ComplexMatrix result = ComplexMatrix::Zero(dr * out, dr * out);
  for (const ComplexMatrix& k : ch.kraus()) {
    const ComplexMatrix kAdj = k.adjoint();
    for (Eigen::Index a = 0; a < dr; ++a) {
      for (Eigen::Index b = 0; b < dr; ++b) {
        result.block(a * out, b * out, out, out) += k * sigma.block(a * in, b * in, in, in) * kAdj;
      }
    }
  }
  return result;
}

DensityMatrix applyExtendedChannel(const QuantumChannel& ch, const DensityMatrix& sigma,
                                   std::size_t dimReference) {
  return DensityMatrix(applyExtendedKraus(ch, sigma.matrix(), dimReference));
}

}  // namespace qcert
