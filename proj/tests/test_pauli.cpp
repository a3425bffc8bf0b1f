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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "magic/pauli.hpp"
#include "magic/random.hpp"

namespace magic {
namespace {

// Independent oracle: tensor products of explicit 2x2 matrices and <psi|P|psi>.
CMatrix single(char c) {
  CMatrix m(2, 2);
  const Complex i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

CMatrix label_matrix(const std::string& label) {
  CMatrix m = single(label[0]);
  for (std::size_t k = 1; k < label.size(); ++k) m = kron(m, single(label[k]));
  return m;
}

std::string label_of(int n, std::uint64_t index) {
  static const char letters[] = "IZXY";
  std::string s(static_cast<std::size_t>(n), 'I');
  const std::uint64_t x = index >> n, z = index & ((1u << n) - 1);
  for (int q = 0; q < n; ++q) {
    const int bit = n - 1 - q;
    s[static_cast<std::size_t>(q)] = letters[2 * ((x >> bit) & 1) + ((z >> bit) & 1)];
  }
  return s;
}

TEST(PauliString, LabelRoundTrip) {
  for (const char* l : {"I", "X", "Y", "Z", "XIZY", "YYZX"}) {
    EXPECT_EQ(PauliString::from_label(l).label(), l);
  }
  EXPECT_THROW(PauliString::from_label("XQ"), DimensionError);
}

TEST(PauliString, MatricesMatchExplicitKronecker) {
  for (const char* l : {"X", "Y", "Z", "XY", "YZX", "IYIY"}) {
    const CMatrix diff = pauli_matrix(PauliString::from_label(l)) - label_matrix(l);
    EXPECT_LT(diff.norm(), 1e-15) << l;
  }
}

TEST(PauliString, MatricesAreHermitianAndSquareToIdentity) {
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    const PauliString p(3, idx >> 3, idx & 7);
    const CMatrix m = pauli_matrix(p);
    EXPECT_LT((m - m.adjoint()).norm(), 1e-15);
    EXPECT_LT((m * m - CMatrix::Identity(8, 8)).norm(), 1e-14);
  }
}

TEST(Expectation, BasicStates) {
  const auto zero = StateVector::basis(1, 0);
  EXPECT_DOUBLE_EQ(expectation(zero, PauliString::from_label("Z")), 1.0);
  EXPECT_DOUBLE_EQ(expectation(zero, PauliString::from_label("X")), 0.0);
  EXPECT_NEAR(expectation(StateVector::plus(1), PauliString::from_label("X")), 1.0, 1e-15);
}

TEST(Expectation, RejectsUnnormalizedInput) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector(1, v), DimensionError);
}

class SpectrumOracle : public ::testing::TestWithParam<int> {};

TEST_P(SpectrumOracle, FastNaiveAndMatrixOracleAgree) {
  const int n = GetParam();
  Rng rng(100 + static_cast<std::uint64_t>(n));
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = StateVector::haar_random(n, rng);
    const auto fast = full_spectrum(psi);
    const auto naive = full_spectrum_naive(psi);
    ASSERT_EQ(fast.size(), dim_of(2 * n));
    for (std::size_t i = 0; i < fast.size(); ++i) {
      EXPECT_NEAR(fast[i], naive[i], 1e-12);
      if (n <= 3) {
        const CMatrix p = label_matrix(label_of(n, i));
        const double oracle = (psi.amplitudes().adjoint() * p * psi.amplitudes())(0, 0).real();
        EXPECT_NEAR(fast[i], oracle, 1e-12) << label_of(n, i);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Qubits, SpectrumOracle, ::testing::Values(1, 2, 3, 4, 5));

TEST(Spectrum, PuritySumIsTwoToTheN) {
  Rng rng(7);
  for (int n = 1; n <= 6; ++n) {
    const auto s = full_spectrum(StateVector::haar_random(n, rng));
    EXPECT_NEAR(s.purity_sum(), std::ldexp(1.0, n), 1e-9);
    EXPECT_NEAR(s.at(PauliString::identity(n)), 1.0, 1e-12);
  }
}

TEST(Spectrum, TPlusConjugationValues) {
  // T|+> has <X> = cos(pi/4), <Y> = sin(pi/4), <Z> = 0.
  CVector a(2);
  a << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), kPi / 4);
  const auto s = full_spectrum(StateVector(1, a));
  EXPECT_NEAR(s.at(PauliString::from_label("X")), std::cos(kPi / 4), 1e-15);
  EXPECT_NEAR(s.at(PauliString::from_label("Y")), std::sin(kPi / 4), 1e-15);
  EXPECT_NEAR(s.at(PauliString::from_label("Z")), 0.0, 1e-15);
}

TEST(Spectrum, IndexingIsXMajor) {
  const PauliSpectrum s(2, std::vector<double>(16, 0.0));
  const PauliString p = s.pauli((0b10u << 2) | 0b11u);
  EXPECT_EQ(p.label(), "YZ");
}

TEST(Spectrum, CsvHeaderAndRows) {
  std::ostringstream os;
  full_spectrum(StateVector::basis(1, 0)).write_csv(os);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x_mask,z_mask,expectation");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(WalshHadamard, MatchesDefinition) {
  std::vector<double> v{1, 2, -3, 0.5, 4, 0, 1, -1};
  auto w = v;
  walsh_hadamard(w);
  for (std::size_t k = 0; k < v.size(); ++k) {
    double acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      acc += ((popcount(j & k) & 1) ? -1.0 : 1.0) * v[j];
    }
    EXPECT_NEAR(w[k], acc, 1e-12);
  }
}

}  // namespace
}  // namespace magic
