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

#pragma once

#include <cmath>
#include <vector>

#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/stabilizer.hpp"
#include "magic/state.hpp"

namespace magic {

/// Stabilizer Renyi entropy M_alpha in bits together with the raw moment
/// R_alpha = sum_P |e_P|^{2 alpha}.
struct SreValue {
  double alpha = 2.0;
  double value = 0.0;
  double r_alpha = 0.0;
};

namespace detail {
// Entries below this magnitude count as exact zeros for alpha = 0 and for the
// 0 log 0 convention at alpha = 1.
inline constexpr double kZeroExpectation = 1e-12;
}  // namespace detail

/// M_alpha of a state given its Pauli spectrum.
///   alpha != 1: M = (log2 R_alpha - n alpha) / (1 - alpha) - n
///   alpha == 1: M = -sum_P Xi_P log2 Xi_P - n, Xi_P = e_P^2 / 2^n
inline SreValue renyi_entropy(const PauliSpectrum& spectrum, double alpha) {
  if (!(alpha >= 0.0)) throw DimensionError("Renyi index must be non-negative");
  const int n = spectrum.n();
  const double scale = static_cast<double>(dim_of(n));
  SreValue out;
  out.alpha = alpha;
  if (alpha == 1.0) {
    double entropy = 0.0;
    double r1 = 0.0;
    for (double e : spectrum.values()) {
      const double sq = e * e;
      r1 += sq;
      if (std::abs(e) <= detail::kZeroExpectation) continue;
      const double xi = sq / scale;
      entropy -= xi * std::log2(xi);
    }
    out.r_alpha = r1;
    out.value = entropy - n;
    return out;
  }
  double r = 0.0;
  if (alpha == 0.0) {
    for (double e : spectrum.values()) {
      if (std::abs(e) > detail::kZeroExpectation) r += 1.0;
    }
  } else if (alpha == 2.0) {
    for (double e : spectrum.values()) {
      const double sq = e * e;
      r += sq * sq;
    }
  } else {
    for (double e : spectrum.values()) r += std::pow(std::abs(e), 2.0 * alpha);
  }
  out.r_alpha = r;
  out.value = (std::log2(r) - n * alpha) / (1.0 - alpha) - n;
  return out;
}

inline SreValue renyi_entropy(const StateVector& state, double alpha) {
  if (!(alpha >= 0.0)) throw DimensionError("Renyi index must be non-negative");
  return renyi_entropy(full_spectrum(state), alpha);
}

/// sum_P e_P^4.
inline double r2_sum(const StateVector& state) { return renyi_entropy(state, 2.0).r_alpha; }

inline constexpr double kDefaultNullityTolerance = 1e-6;

/// n - log2 |{P : |e_P| >= 1 - tol}|. For a Choi state this is the unitary
/// stabilizer nullity of the underlying gate.
inline int stabilizer_nullity(const PauliSpectrum& spectrum,
                              double tol = kDefaultNullityTolerance) {
  std::size_t hits = 0;
  for (double e : spectrum.values()) {
    if (std::abs(e) >= 1.0 - tol) ++hits;
  }
  if (hits == 0 || (hits & (hits - 1)) != 0) {
    throw NumericalError("stabilizer group size " + std::to_string(hits) +
                         " is not a power of two; adjust the tolerance");
  }
  int log_hits = 0;
  while ((std::size_t{1} << log_hits) < hits) ++log_hits;
  return spectrum.n() - log_hits;
}

inline int stabilizer_nullity(const StateVector& state, double tol = kDefaultNullityTolerance) {
  return stabilizer_nullity(full_spectrum(state), tol);
}

/// Mean of M_alpha(U|phi>) over every pure stabilizer input |phi>.
inline double nonstabilizing_power(const UnitaryMatrix& u, double alpha,
                                   const StabilizerSet& basis) {
  if (basis.n() != u.n()) throw DimensionError("stabilizer set size does not match unitary");
  std::vector<double> values(basis.size());
  parallel_for(basis.size(), [&](std::size_t i) {
    values[i] = renyi_entropy(u.apply(basis[i]), alpha).value;
  });
  double sum = 0.0;
  for (double v : values) sum += v;  // index order, independent of threads
  return sum / static_cast<double>(values.size());
}

inline double nonstabilizing_power(const UnitaryMatrix& u, double alpha) {
  if (u.n() < 1 || u.n() > 3) throw DimensionError("nonstabilizing power supports 1..3 qubits");
  return nonstabilizing_power(u, alpha, stabilizer_states(u.n()));
}

}  // namespace magic
