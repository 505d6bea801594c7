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

#include <cmath>

#include "doctest.h"
#include "qcert/errors.hpp"
#include "qcert/noise_models.hpp"
#include "qcert/probe_states.hpp"
#include "support/random_instances.hpp"

using namespace qcert;
using namespace qcert::testing;

TEST_CASE("maximally entangled probe") {
  for (std::size_t d : {2u, 3u, 5u}) {
    const BipartiteProbeState probe = maximallyEntangledProbe(d);
    CHECK(probe.d() == d);
    CHECK(maxEntangledFidelity(probe) == doctest::Approx(1.0));
    CHECK(vonNeumannEntropy(probe.sigma()) == doctest::Approx(0.0).epsilon(1e-12));
    const DensityMatrix rho = reducedSystemState(probe);
    CHECK(maxAbs(rho.matrix() - identityMatrix(d) / static_cast<double>(d)) < 1e-14);
  }
  CHECK_THROWS_AS((void)maximallyEntangledProbe(1), DomainError);
}

TEST_CASE("isotropic probe") {
  const BipartiteProbeState probe = isotropicProbe(2, 0.9);
  CHECK(maxEntangledFidelity(probe) == doctest::Approx(0.9));
  CHECK(maxAbs(reducedSystemState(probe).matrix() - identityMatrix(2) / 2.0) < 1e-14);
  // Spectrum {0.9, 1/30, 1/30, 1/30}.
  const auto spec = hermitianEigen(probe.sigma().matrix()).eigenvalues;
  CHECK(spec[0] == doctest::Approx(0.9));
  for (std::size_t k = 1; k < 4; ++k) CHECK(spec[k] == doctest::Approx(0.1 / 3.0));

  const BipartiteProbeState flat = isotropicProbe(3, 1.0 / 9.0);
  CHECK(maxAbs(flat.sigma().matrix() - identityMatrix(9) / 9.0) < 1e-14);
  CHECK_THROWS_AS((void)isotropicProbe(2, 0.2), DomainError);
  CHECK_THROWS_AS((void)isotropicProbe(2, 1.01), DomainError);
  CHECK(probe.label() == "isotropic(d=2,F=0.9)");
}

TEST_CASE("Bell-diagonal probe has the prescribed Bell weights") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.index(3);
    const WeylDistribution q = randomWeylDistribution(d, rng);
    const BipartiteProbeState probe = bellDiagonalProbe(q);
    for (std::size_t m = 0; m < d; ++m) {
      for (std::size_t n = 0; n < d; ++n) {
        const ComplexVector bell = doubleKet(weylUnitary(d, m, n)) / std::sqrt(static_cast<double>(d));
        CHECK(bell.dot(probe.sigma().matrix() * bell).real() == doctest::Approx(q(m, n)));
      }
    }
    CHECK(maxAbs(reducedSystemState(probe).matrix() - identityMatrix(d) / static_cast<double>(d)) <
          1e-12);
  }
}

TEST_CASE("PureDecomposition validation") {
  CHECK_THROWS_AS((void)PureDecomposition({}), InvalidState);
  CHECK_THROWS_AS((void)PureDecomposition({{1.0, identityMatrix(2)}}), InvalidState);
  CHECK_THROWS_AS((void)PureDecomposition({{-0.5, identityMatrix(2)}, {1.0, identityMatrix(2)}}),
                  InvalidState);
  CHECK_THROWS_AS(
      (void)PureDecomposition({{0.25, identityMatrix(2)}, {0.25, identityMatrix(3)}}),
      DimensionMismatch);
  CHECK_NOTHROW((void)PureDecomposition({{0.5, identityMatrix(2)}}));
}

TEST_CASE("reduced state agrees with brute-force partial trace") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.index(3);
    const BipartiteProbeState probe = randomProbe(d, 1 + rng.index(4), rng, trial % 3 == 0 ? 1 : 0);
    const DensityMatrix rho = reducedSystemState(probe);
    CHECK(maxAbs(rho.matrix() - bruteForceTraceReference(probe.sigma().matrix(), d, d)) < 1e-12);
  }
}

TEST_CASE("probeFromDensity reproduces the state") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.index(2);
    const DensityMatrix sigma = randomDensity(d * d, rng, 1 + rng.index(d * d));
    const BipartiteProbeState probe = probeFromDensity(sigma, d);
    CHECK(maxAbs(probe.sigma().matrix() - sigma.matrix()) < 1e-10);
    CHECK(maxAbs(reducedSystemState(probe).matrix() -
                 partialTraceReference(sigma.matrix(), d, d)) < 1e-10);
  }
  Rng other(24);
  CHECK_THROWS_AS((void)probeFromDensity(randomDensity(5, other), 2), DimensionMismatch);
}

TEST_CASE("different decompositions of the same state agree") {
  // The maximally mixed two-qubit state as a Bell mixture and as a product-basis mixture.
  const BipartiteProbeState bell = bellDiagonalProbe(WeylDistribution::uniform(2));
  std::vector<DecompositionTerm> terms;
  for (Eigen::Index a = 0; a < 2; ++a) {
    for (Eigen::Index b = 0; b < 2; ++b) {
      ComplexMatrix op = ComplexMatrix::Zero(2, 2);
      op(a, b) = 0.5;
      terms.push_back({1.0, op});
    }
  }
  const BipartiteProbeState product = customProbe(PureDecomposition(terms));
  CHECK(maxAbs(bell.sigma().matrix() - product.sigma().matrix()) < 1e-14);
  CHECK(maxAbs(reducedSystemState(bell).matrix() - reducedSystemState(product).matrix()) < 1e-14);
}
