// Copyright 2026 The magic-sre Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "magic/circuit.hpp"
#include "magic/random.hpp"
#include "magic/sre.hpp"

namespace magic {
namespace {

StateVector phase_plus(double phi) {
  CVector a(2);
  a << 1 / std::sqrt(2.0), std::polar(1 / std::sqrt(2.0), phi);
  return StateVector(1, a);
}

// Oracle from the definition, using the naive spectrum and Xi_P = e_P^2 / 2^n.
double oracle_sre(const StateVector& s, double alpha) {
  const auto spec = full_spectrum_naive(s);
  const double d = std::ldexp(1.0, s.n());
  double acc = 0.0;
  for (double e : spec.values()) {
    const double xi = e * e / d;
    if (alpha == 1.0) {
      if (xi > 0) acc -= xi * std::log2(xi);
    } else if (xi > 1e-24) {
      acc += std::pow(xi, alpha);
    }
  }
  return alpha == 1.0 ? acc - s.n() : std::log2(acc) / (1 - alpha) - s.n();
}

UnitaryMatrix random_clifford(int n, Rng& rng, int length = 30) {
  UnitaryMatrix u = UnitaryMatrix::identity(n);
  for (int k = 0; k < length; ++k) {
    const auto q = static_cast<int>(rng.below(static_cast<std::size_t>(n)));
    switch (rng.below(n >= 2 ? 3 : 2)) {
      case 0: u = embed_gate(build_gate("h", {}), {q}, n) * u; break;
      case 1: u = embed_gate(build_gate("s", {}), {q}, n) * u; break;
      default: {
        const int r = (q + 1 + static_cast<int>(rng.below(static_cast<std::size_t>(n - 1)))) % n;
        u = embed_gate(build_gate("cnot", {}), {q, r}, n) * u;
      }
    }
  }
  return u;
}

TEST(Sre, TPlus) {
  const auto s = phase_plus(kPi / 4);
  EXPECT_NEAR(renyi_entropy(s, 2.0).value, 2 - std::log2(3.0), 1e-12);
  EXPECT_NEAR(r2_sum(s), 1.5, 1e-12);
}

TEST(Sre, SqrtTPlus) {
  const auto s = phase_plus(kPi / 8);
  EXPECT_NEAR(renyi_entropy(s, 2.0).value, 3 - std::log2(7.0), 1e-12);
  EXPECT_NEAR(r2_sum(s), 1.75, 1e-12);
}

TEST(Sre, BoostExample) {
  const auto psi = phase_plus(kPi / 10);
  const auto out = build_gate("sqrtt", {}).apply(psi);
  const double before = renyi_entropy(psi, 2.0).value;
  const double after = renyi_entropy(out, 2.0).value;
  EXPECT_NEAR(before, 3 - std::log2(7 + std::cos(2 * kPi / 5)), 1e-12);
  EXPECT_NEAR(after, 3 - std::log2(7 + std::cos(9 * kPi / 10)), 1e-12);
  EXPECT_GT(after - before, 3 - std::log2(7.0));
}

TEST(Sre, CczPlusAndChoi) {
  const auto s = build_gate("ccz", {}).apply(StateVector::plus(3));
  EXPECT_NEAR(r2_sum(s), 11.0 / 4, 1e-12);
  EXPECT_NEAR(renyi_entropy(s, 2.0).value, 5 - std::log2(11.0), 1e-12);
  EXPECT_NEAR(renyi_entropy(choi_state(build_gate("ccz", {})), 2.0).value, 5 - std::log2(11.0),
              1e-12);
  EXPECT_NEAR(renyi_entropy(choi_state(build_gate("t", {})), 2.0).value, 2 - std::log2(3.0),
              1e-12);
}

TEST(Sre, MatchesDefinitionOracleForSeveralAlpha) {
  Rng rng(21);
  for (int n = 1; n <= 3; ++n) {
    const auto s = StateVector::haar_random(n, rng);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      EXPECT_NEAR(renyi_entropy(s, alpha).value, oracle_sre(s, alpha), 1e-10)
          << "n=" << n << " alpha=" << alpha;
    }
  }
}

TEST(Sre, AlphaTwoRelation) {
  Rng rng(22);
  const auto s = StateVector::haar_random(3, rng);
  const auto v = renyi_entropy(s, 2.0);
  EXPECT_NEAR(v.value, 3 - std::log2(v.r_alpha), 1e-12);
}

TEST(Sre, AlphaZeroCountsSupport) {
  // T|+> has three nonzero expectations: log2(3) - 1.
  EXPECT_NEAR(renyi_entropy(phase_plus(kPi / 4), 0.0).value, std::log2(3.0) - 1, 1e-12);
}

TEST(Sre, RejectsNegativeAlpha) {
  EXPECT_THROW(renyi_entropy(StateVector::plus(1), -1.0), DimensionError);
}

TEST(Sre, NonNegativeOnRandomStates) {
  Rng rng(23);
  for (int k = 0; k < 1000; ++k) {
    const auto s = StateVector::haar_random(1 + k % 3, rng);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      ASSERT_GE(renyi_entropy(s, alpha).value, -1e-9);
    }
  }
}

TEST(Sre, Additivity) {
  Rng rng(24);
  for (int k = 0; k < 10; ++k) {
    const auto a = StateVector::haar_random(1 + k % 2, rng);
    const auto b = StateVector::haar_random(1 + k % 3, rng);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      EXPECT_NEAR(renyi_entropy(tensor(a, b), alpha).value,
                  renyi_entropy(a, alpha).value + renyi_entropy(b, alpha).value, 1e-9);
    }
  }
}

TEST(Sre, CliffordInvariance) {
  Rng rng(25);
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 3;
    const auto s = StateVector::haar_random(n, rng);
    const auto c = random_clifford(n, rng);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      EXPECT_NEAR(renyi_entropy(c.apply(s), alpha).value, renyi_entropy(s, alpha).value, 1e-9);
    }
  }
}

TEST(Nullity, KnownChoiValues) {
  EXPECT_EQ(stabilizer_nullity(choi_state(build_gate("t", {}))), 1);
  EXPECT_EQ(stabilizer_nullity(choi_state(build_gate("h", {}))), 0);
  EXPECT_EQ(stabilizer_nullity(choi_state(build_gate("ccz", {}))), 3);
  EXPECT_EQ(stabilizer_nullity(choi_state(build_gate("cnot", {}))), 0);
}

TEST(Nullity, TChoiUnitExpectationsAreIdentityAndZZ) {
  // Exhaustive scan of the 16 two-qubit Paulis.
  const auto c = choi_state(build_gate("t", {}));
  std::vector<std::string> unit;
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t z = 0; z < 4; ++z) {
      const PauliString p(2, x, z);
      if (std::abs(std::abs(expectation(c, p)) - 1) < 1e-9) unit.push_back(p.label());
    }
  }
  EXPECT_EQ(unit, (std::vector<std::string>{"II", "ZZ"}));
}

TEST(Nullity, NonPowerOfTwoCountThrows) {
  // Three of the four one-qubit Paulis at magnitude one cannot happen for a
  // pure state, but a hand-built spectrum exercises the guard.
  const PauliSpectrum fake(1, {1.0, 1.0, 1.0, 0.0});
  EXPECT_THROW(stabilizer_nullity(fake), NumericalError);
}

TEST(NonstabilizingPower, Clifford) {
  EXPECT_NEAR(nonstabilizing_power(build_gate("h", {}), 2.0), 0.0, 1e-12);
  EXPECT_NEAR(nonstabilizing_power(build_gate("cnot", {}), 2.0), 0.0, 1e-12);
}

TEST(NonstabilizingPower, SqrtT) {
  EXPECT_NEAR(nonstabilizing_power(build_gate("sqrtt", {}), 2.0), (4.0 / 6) * (3 - std::log2(7.0)),
              1e-12);
}

TEST(NonstabilizingPower, NotSubadditiveUnderComposition) {
  // Rz(pi) Rx(pi/2) Rz(pi/10) in half-angle rotations; rz/rx here take the
  // full exponent, so every angle is halved.
  const auto u1 = build_gate("rz", {kPi / 2}) * build_gate("rx", {kPi / 4}) *
                  build_gate("rz", {kPi / 20});
  const auto u2 = build_gate("sqrtt", {});
  const double m12 = nonstabilizing_power(u1 * u2, 2.0);
  const double m1 = nonstabilizing_power(u1, 2.0);
  const double m2 = nonstabilizing_power(u2, 2.0);
  EXPECT_GT(m12, m1 + m2 + 1e-6) << m12 << " vs " << m1 << " + " << m2;
}

}  // namespace
}  // namespace magic
