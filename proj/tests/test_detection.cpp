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
#include <numeric>

#include <Eigen/QR>

#include "doctest.h"
#include "qcert/detection.hpp"
#include "qcert/errors.hpp"
#include "qcert/noise_models.hpp"
#include "qcert/probe_states.hpp"
#include "support/random_instances.hpp"

using namespace qcert;
using namespace qcert::testing;

namespace {

// t-vector oracle using Eigen's complete orthogonal decomposition for the
// pseudoinverse and an explicit kron with the output identity.
std::vector<double> tOracle(const BipartiteProbeState& probe, const Povm& povm) {
  const std::size_t d = probe.d();
  const std::size_t dimOut = povm.dimTotal() / d;
  const ComplexMatrix rhoT = bruteForceTraceReference(probe.sigma().matrix(), d, d).transpose();
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(rhoT);
  cod.setThreshold(1e-10);
  const ComplexMatrix pinv = cod.pseudoInverse();
  ComplexMatrix m = ComplexMatrix::Zero(rhoT.rows(), rhoT.cols());
  for (const auto& term : probe.decomposition().terms()) {
    m += term.weight * term.op * pinv * term.op.adjoint();
  }
  std::vector<double> t;
  for (const auto& e : povm.elements()) {
    t.push_back(traceOracle(kron(m, identityMatrix(dimOut)), e).real());
  }
  return t;
}

// Rank-1 projectors onto a random orthonormal basis of C^dim.
Povm randomBasisPovm(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = randomUnitary(dim, rng);
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index k = 0; k < u.cols(); ++k) elements.push_back(outerProduct(u.col(k)));
  return Povm(dim, std::move(elements), {});
}

// Probe with rho = I/d: A_l = B_l S^{-1/2} / sqrt(d), S = sum_l a_l B_l^dag B_l.
BipartiteProbeState flatMarginalProbe(std::size_t d, std::size_t numTerms, Rng& rng) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t l = 0; l < numTerms; ++l) {
    raw.push_back(ginibre(d, d, rng));
    s += raw.back().adjoint() * raw.back();
  }
  const ComplexMatrix invRoot = pseudoInverse(matrixSqrt(s));
  std::vector<DecompositionTerm> terms;
  for (const auto& b : raw) {
    terms.push_back({1.0, b * invRoot / std::sqrt(static_cast<double>(d))});
  }
  return customProbe(PureDecomposition(std::move(terms)));
}

double traceOf(const ComplexMatrix& m) { return m.trace().real(); }

}  // namespace

TEST_CASE("Bell POVM") {
  for (std::size_t d : {2u, 3u, 4u}) {
    const Povm povm = bellPovm(d);
    CHECK(povm.size() == d * d);
    CHECK(povm.dimTotal() == d * d);
    for (std::size_t a = 0; a < povm.size(); ++a) {
      for (std::size_t b = 0; b < povm.size(); ++b) {
        const ComplexMatrix prod = povm.elements()[a] * povm.elements()[b];
        const ComplexMatrix expected =
            a == b ? povm.elements()[a] : ComplexMatrix::Zero(prod.rows(), prod.cols());
        CHECK(maxAbs(prod - expected) < 1e-12);
      }
    }
  }
  CHECK(bellPovm(2).labels()[3] == "bell(1,1)");

  // The d = 2 elements are the four Bell projectors.
  const Povm two = bellPovm(2);
  ComplexVector phiPlus(4), phiMinus(4), psiPlus(4), psiMinus(4);
  const double r = 1.0 / std::sqrt(2.0);
  phiPlus << r, 0, 0, r;
  phiMinus << r, 0, 0, -r;
  psiPlus << 0, r, r, 0;
  psiMinus << 0, r, -r, 0;
  CHECK(maxAbs(two.elements()[0] - outerProduct(phiPlus)) < 1e-14);
  CHECK(maxAbs(two.elements()[2] - outerProduct(phiMinus)) < 1e-14);
  CHECK(maxAbs(two.elements()[1] - outerProduct(psiPlus)) < 1e-14);
  CHECK(maxAbs(two.elements()[3] - outerProduct(psiMinus)) < 1e-14);
  CHECK_THROWS_AS((void)bellPovm(1), DomainError);
}

TEST_CASE("local form of the Bell projectors for d = 3") {
  const std::size_t d = 3;
  const Povm povm = bellPovm(d);
  const double pi = std::acos(-1.0);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      ComplexMatrix local = ComplexMatrix::Zero(9, 9);
      for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < d; ++q) {
          const double angle = 2.0 * pi *
                               (static_cast<double>(n * p) - static_cast<double>(m * q)) /
                               static_cast<double>(d);
          const ComplexMatrix u = weylUnitary(d, p, q);
          local += std::polar(1.0, angle) * kron(u, u.conjugate());
        }
      }
      local /= 9.0;
      CHECK(maxAbs(local - povm.elements()[m * d + n]) < 1e-10);
      CHECK(maxAbs(bellProjectorLocalForm(d, m, n) - local) < 1e-12);
    }
  }
}

TEST_CASE("erasure-adapted POVM") {
  for (std::size_t d : {2u, 3u}) {
    const Povm povm = erasurePovm(d);
    CHECK(povm.size() == d * d + d);
    CHECK(povm.dimTotal() == d * (d + 1));
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(d * (d + 1)),
                                            static_cast<Eigen::Index>(d * (d + 1)));
    for (const auto& e : povm.elements()) sum += e;
    CHECK(maxAbs(sum - identityMatrix(d * (d + 1))) < 1e-10);
  }
  const Povm two = erasurePovm(2);
  CHECK(two.labels()[4] == "flag(0)");
  CHECK(two.elements()[4](2, 2) == Complex(1.0));
  CHECK(two.elements()[5](5, 5) == Complex(1.0));
}

TEST_CASE("Povm validation") {
  CHECK_THROWS_AS((void)Povm(2, {identityMatrix(2), identityMatrix(2)}, {}), InvalidState);
  ComplexMatrix neg = identityMatrix(2);
  neg(1, 1) = -1.0;
  ComplexMatrix two = identityMatrix(2);
  two(1, 1) = 2.0;
  CHECK_THROWS_AS((void)Povm(2, {neg, two}, {}), InvalidState);
  CHECK_THROWS_AS((void)Povm(3, {identityMatrix(2)}, {}), DimensionMismatch);
  CHECK_THROWS_AS((void)Povm(2, {identityMatrix(2)}, {"a", "b"}), InvalidArgument);
}

TEST_CASE("outcome probabilities") {
  const auto p0 = outcomeProbabilities(maximallyEntangledProbe(2), identityChannel(2), bellPovm(2));
  CHECK(p0[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(p0[i]) < 1e-15);

  for (std::size_t d : {2u, 3u}) {
    for (double p : {0.05, 0.3}) {
      const auto probs =
          outcomeProbabilities(maximallyEntangledProbe(d), depolarizingChannel(d, p), bellPovm(d));
      CHECK(probs[0] == doctest::Approx(1.0 - p));
      for (std::size_t i = 1; i < d * d; ++i) {
        CHECK(probs[i] == doctest::Approx(p / static_cast<double>(d * d - 1)));
      }
    }
  }

  for (double p : {0.0, 0.2, 0.6}) {
    for (double f : {0.9, 0.98}) {
      const auto probs = outcomeProbabilities(isotropicProbe(2, f), erasureChannel(2, p), erasurePovm(2));
      CHECK(probs[0] == doctest::Approx((1.0 - p) * f));
      for (std::size_t i = 1; i < 4; ++i) {
        CHECK(probs[i] == doctest::Approx((1.0 - p) * (1.0 - f) / 3.0));
      }
      CHECK(probs[4] == doctest::Approx(p / 2.0));
      CHECK(probs[5] == doctest::Approx(p / 2.0));
    }
  }

  CHECK_THROWS_AS((void)outcomeProbabilities(maximallyEntangledProbe(2), erasureChannel(2, 0.1),
                                             bellPovm(2)),
                  DimensionMismatch);
}

TEST_CASE("outcome probabilities are valid on random instances") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.index(2);
    const std::size_t dOut = 2 + rng.index(2);
    const auto probe = randomProbe(d, 1 + rng.index(3), rng);
    const auto ch = randomChannel(d, dOut, 1 + rng.index(3), rng);
    const auto povm = randomPovm(d * dOut, 2 + rng.index(5), rng, 1 + rng.index(2));
    const auto probs = outcomeProbabilities(probe, ch, povm);
    const double total = std::accumulate(probs.values().begin(), probs.values().end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : probs.values()) CHECK(x >= 0.0);
  }
}

TEST_CASE("Bell-outcome convolution") {
  const WeylDistribution pauli = WeylDistribution::depolarizing(2, 0.1);
  const auto same = pauliBellConvolution(pauli, WeylDistribution::delta(2));
  for (std::size_t i = 0; i < 4; ++i) CHECK(same[i] == doctest::Approx(pauli.values()[i]));

  for (std::size_t d : {2u, 3u}) {
    const double p = 0.1;
    const double f = 0.9;
    const double d2m1 = static_cast<double>(d * d - 1);
    std::vector<double> q(d * d, (1.0 - f) / d2m1);
    q[0] = f;
    const auto out = pauliBellConvolution(WeylDistribution::depolarizing(d, p),
                                          WeylDistribution(d, q));
    CHECK(out[0] == doctest::Approx((1.0 - p) * f + p * (1.0 - f) / d2m1));
  }

  // Asymmetric d = 3 grid: a delta probe returns the channel grid reflected in n.
  Rng rng(32);
  const WeylDistribution asym = randomWeylDistribution(3, rng);
  const auto reflected = pauliBellConvolution(asym, WeylDistribution::delta(3));
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t n = 0; n < 3; ++n) {
      CHECK(reflected[m * 3 + n] == doctest::Approx(asym(m, (3 - n) % 3)));
    }
  }

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.index(3);
    const WeylDistribution pa = randomWeylDistribution(d, rng);
    const WeylDistribution qa = randomWeylDistribution(d, rng);
    const auto fast = pauliBellConvolution(pa, qa);
    const auto oracle = scatterConvolution(pa, qa);
    for (std::size_t i = 0; i < d * d; ++i) CHECK(std::abs(fast[i] - oracle[i]) < 1e-14);
  }
}

TEST_CASE("convolution matches the full measurement pipeline") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + rng.index(2);
    const WeylDistribution pa = randomWeylDistribution(d, rng);
    const WeylDistribution qa = randomWeylDistribution(d, rng);
    const auto pipeline = outcomeProbabilities(bellDiagonalProbe(qa), pauliChannel(pa), bellPovm(d));
    const auto conv = pauliBellConvolution(pa, qa);
    for (std::size_t i = 0; i < d * d; ++i) CHECK(std::abs(pipeline[i] - conv[i]) < 1e-10);
  }
}

TEST_CASE("t-vector special cases") {
  Rng rng(34);

  SUBCASE("maximally entangled element gives rank / d") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.index(3);
      const std::size_t supportRank = 1 + rng.index(d);
      const auto probe = randomProbe(d, 1 + rng.index(3), rng, supportRank);
      const double rank = static_cast<double>(numericalRank(reducedSystemState(probe).matrix()));
      const TVector t = computeTVector(probe, bellPovm(d));
      for (double x : t.values()) CHECK(std::abs(x - rank / static_cast<double>(d)) < 1e-9);
    }
  }

  SUBCASE("invertible pure probe gives Tr[Pi]") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.index(2);
      const std::size_t dOut = 2 + rng.index(2);
      ComplexMatrix a = ginibre(d, d, rng);
      a /= a.norm();
      const auto probe = customProbe(PureDecomposition({{1.0, a}}));
      const Povm povm = randomPovm(d * dOut, 2 + rng.index(4), rng);
      const TVector t = computeTVector(probe, povm);
      for (std::size_t i = 0; i < povm.size(); ++i) {
        CHECK(std::abs(t[i] - traceOf(povm.elements()[i])) < 1e-9);
      }
    }
  }

  SUBCASE("flat marginal gives d Tr[Tr_S sigma Tr_S Pi]") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.index(2);
      const auto probe = flatMarginalProbe(d, 1 + rng.index(3), rng);
      CHECK(maxAbs(reducedSystemState(probe).matrix() - identityMatrix(d) / static_cast<double>(d)) <
            1e-12);
      const Povm povm = randomPovm(d * d, 2 + rng.index(4), rng);
      const TVector t = computeTVector(probe, povm);
      const ComplexMatrix ref = partialTraceSystem(probe.sigma().matrix(), d, d);
      for (std::size_t i = 0; i < povm.size(); ++i) {
        const ComplexMatrix piRef = partialTraceSystem(povm.elements()[i], d, d);
        const double expected = static_cast<double>(d) * traceOf(ref * piRef);
        CHECK(std::abs(t[i] - expected) < 1e-9);
      }
    }
  }

  SUBCASE("Bell-diagonal probe gives Tr[Pi]") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + rng.index(2);
      const auto probe = bellDiagonalProbe(randomWeylDistribution(d, rng));
      const Povm povm = randomPovm(d * d, 2 + rng.index(5), rng, 1 + rng.index(3));
      const TVector t = computeTVector(probe, povm);
      for (std::size_t i = 0; i < povm.size(); ++i) {
        CHECK(std::abs(t[i] - traceOf(povm.elements()[i])) < 1e-9);
      }
    }
    const TVector erasureT = computeTVector(isotropicProbe(2, 0.95), erasurePovm(2));
    for (double x : erasureT.values()) CHECK(std::abs(x - 1.0) < 1e-9);
  }

  SUBCASE("constant Tr[Pi] = k gives log2 t.p = log2 k with k = d^2 / N") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2;
      const auto probe = bellDiagonalProbe(randomWeylDistribution(d, rng));
      const Povm basis = randomBasisPovm(d * d, rng);
      // Merge the four rank-1 elements into two rank-2 elements, k = 2 = d^2 / N.
      const Povm merged(d * d, {basis.elements()[0] + basis.elements()[1],
                                basis.elements()[2] + basis.elements()[3]}, {});
      const auto ch = depolarizingChannel(d, rng.uniform() * 0.5);
      for (const Povm* povm : {&basis, &merged}) {
        const double k = static_cast<double>(d * d) / static_cast<double>(povm->size());
        const TVector t = computeTVector(probe, *povm);
        const auto probs = outcomeProbabilities(probe, ch, *povm);
        CHECK(std::abs(std::log2(t.dot(probs)) - std::log2(k)) < 1e-9);
      }
    }
  }
}

TEST_CASE("t-vector sum rule and oracle agreement") {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.index(2);
    const std::size_t dOut = 2 + rng.index(3);
    const std::size_t supportRank = trial % 2 == 0 ? d : 1 + rng.index(d);
    const auto probe = randomProbe(d, 1 + rng.index(4), rng, supportRank);
    const Povm povm = randomPovm(d * dOut, 2 + rng.index(5), rng, 1 + rng.index(2));
    const TVector t = computeTVector(probe, povm);
    const double rank = static_cast<double>(numericalRank(reducedSystemState(probe).matrix()));
    const double sum = std::accumulate(t.values().begin(), t.values().end(), 0.0);
    CHECK(std::abs(sum - static_cast<double>(dOut) * rank) < 1e-8);
    const auto oracle = tOracle(probe, povm);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t[i] >= 0.0);
      CHECK(std::abs(t[i] - oracle[i]) < 1e-8);
    }
  }
  CHECK_THROWS_AS((void)computeTVector(maximallyEntangledProbe(2), Povm(3, {identityMatrix(3)}, {})),
                  DimensionMismatch);
}

TEST_CASE("coarse graining") {
  const ProbabilityVector p({0.7, 0.1, 0.1, 0.1});
  const TVector t({1.0, 1.0, 1.0, 1.0});

  const CoarseGrained same = coarseGrain(p, t, singletonGrouping(4));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(same.p[i] == p[i]);
    CHECK(same.t[i] == t[i]);
  }

  const CoarseGrained one = coarseGrain(p, t, {{0, 1, 2, 3}});
  CHECK(one.p.size() == 1);
  CHECK(one.p[0] == doctest::Approx(1.0));
  CHECK(one.t[0] == doctest::Approx(4.0));

  const auto probs =
      outcomeProbabilities(maximallyEntangledProbe(2), depolarizingChannel(2, 0.3), bellPovm(2));
  const CoarseGrained binary = coarseGrain(probs, computeTVector(maximallyEntangledProbe(2), bellPovm(2)),
                                           {{0}, {1, 2, 3}});
  CHECK(binary.p[0] == doctest::Approx(0.7));
  CHECK(binary.p[1] == doctest::Approx(0.3));
  CHECK(binary.t[1] == doctest::Approx(3.0));

  CHECK_THROWS_AS(validateGrouping({{0, 1}, {1, 2, 3}}, 4), InvalidArgument);
  CHECK_THROWS_AS(validateGrouping({{0, 1}, {2}}, 4), InvalidArgument);
  CHECK_THROWS_AS(validateGrouping({{0, 1}, {}, {2, 3}}, 4), InvalidArgument);
  CHECK_THROWS_AS(validateGrouping({{0, 1, 2, 4}}, 4), InvalidArgument);
  CHECK_NOTHROW(validateGrouping({{3, 0}, {2, 1}}, 4));
}

TEST_CASE("TVector validation") {
  CHECK_THROWS_AS((void)TVector({1.0, -0.5}), InvalidState);
  const TVector clamped({1.0, -1e-12});
  CHECK(clamped[1] == 0.0);
  CHECK_THROWS_AS((void)TVector({1.0}).dot(ProbabilityVector({0.5, 0.5})), DimensionMismatch);
}
