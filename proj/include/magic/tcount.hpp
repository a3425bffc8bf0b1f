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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "magic/amortization.hpp"
#include "magic/circuit.hpp"
#include "magic/core.hpp"
#include "magic/decompositions.hpp"
#include "magic/hamiltonian.hpp"
#include "magic/random.hpp"
#include "magic/sre.hpp"
#include "magic/stabilizer.hpp"

namespace magic {

struct BoundReport {
  std::string label;
  double choi_sre = 0.0;  // bits
  int sre_bound = 0;
  int nullity_bound = 0;
};

/// ceil(value / (2 - log2 3)), with slack so exact integers are not rounded up.
inline int sre_tcount_bound(double choi_sre) {
  const double ratio = choi_sre / kTGateAmortizedSre - 1e-9;
  return std::max(0, static_cast<int>(std::ceil(ratio)));
}

/// T-count lower bounds for U from the SRE and the stabilizer nullity of its
/// Choi state.
inline BoundReport tcount_lower_bound(const UnitaryMatrix& u, std::string label = "") {
  if (u.n() > 4) throw DimensionError("T-count bounds support unitaries on at most 4 qubits");
  const PauliSpectrum spectrum = full_spectrum(choi_state(u));
  BoundReport rep;
  rep.label = std::move(label);
  rep.choi_sre = std::max(0.0, renyi_entropy(spectrum, 2.0).value);
  rep.sre_bound = sre_tcount_bound(rep.choi_sre);
  rep.nullity_bound = stabilizer_nullity(spectrum);
  return rep;
}

// ---------------------------------------------------------------------------
// R_z scan

struct RzScanRow {
  double theta = 0.0;
  double amortized_sre_lb = 0.0;
  double strict_sre = 0.0;
  double strict_log_rom = 0.0;
  double strict_log_extent = 0.0;
};

struct RzScanOptions {
  int ancillas = 1;
  int restarts = 20;
  std::uint64_t seed = 1;
};

/// For each theta: variational lower bound on the amortized SRE of R_z(theta),
/// and the strict amortized SRE, log-robustness and log-extent over STAB_2.
/// The optimizer is warm-started from the strict maximizer padded with |0>
/// ancillas, so the amortized column never falls below the strict one.
inline std::vector<RzScanRow> scan_rz(const std::vector<double>& thetas,
                                      const RzScanOptions& opt = {}) {
  for (double th : thetas) {
    if (!(th >= 0.0 && th <= kPi / 2 + 1e-12)) {
      throw DimensionError("scan angles must lie in [0, pi/2]");
    }
  }
  if (opt.ancillas < 1) throw DimensionError("R_z scan needs at least one ancilla");
  const auto stab2 = stabilizer_states(2);
  const RobustnessSolver rom(stab2);
  const ExtentSolver extent(stab2);
  std::vector<RzScanRow> rows(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const UnitaryMatrix u = build_gate("rz", {thetas[i]});
    RzScanRow& row = rows[i];
    row.theta = thetas[i];
    const StrictSreResult strict = strict_amortized_sre(u, 2.0);
    row.strict_sre = std::max(0.0, strict.value);
    row.strict_log_rom = strict_amortized_log_rom(u, stab2, rom).value;
    row.strict_log_extent = strict_amortized_log_extent(u, stab2, extent).value;

    OptimizerOptions o;
    o.restarts = opt.restarts;
    o.seed = derive_seed(opt.seed, i);
    StateVector warm = strict.maximizer;
    if (opt.ancillas > 1) warm = tensor(warm, StateVector::basis(opt.ancillas - 1, 0));
    o.warm_starts.push_back(warm);
    const OptimizerReport rep = amortized_sre_lower_bound(u, 2.0, opt.ancillas, o);
    row.amortized_sre_lb = std::max(0.0, rep.best_value);
  }
  std::sort(rows.begin(), rows.end(),
            [](const RzScanRow& a, const RzScanRow& b) { return a.theta < b.theta; });
  return rows;
}

/// `count` equally spaced points from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw DimensionError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    g[static_cast<std::size_t>(k)] = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Disordered Heisenberg scan

struct HeisenbergScanRow {
  double disorder = 0.0;
  double t = 0.0;
  double choi_sre = 0.0;
  int sre_bound = 0;
  int nullity_bound = 0;
  std::uint64_t seed = 0;  // disorder seed for this W
};

struct HeisenbergScanOptions {
  int sites = 4;
  double delta = 0.2;
  std::vector<double> disorders{0.5, 1.0, 2.0, 5.0};
  std::vector<double> times = linear_grid(0.0, 3.0, 31);
  std::uint64_t seed = 1;
  Boundary boundary = Boundary::kPeriodic;
};

/// Choi-state T-count bounds of e^{-iHt} over (W, t). The disorder field for
/// the k-th W is drawn once from derive_seed(seed, k).
inline std::vector<HeisenbergScanRow> scan_heisenberg(const HeisenbergScanOptions& opt) {
  if (opt.sites > 4) throw DimensionError("Heisenberg scan supports at most 4 sites");
  std::vector<HermitianEvolution> evolutions;
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < opt.disorders.size(); ++k) {
    HamiltonianSpec spec;
    spec.sites = opt.sites;
    spec.delta = opt.delta;
    spec.disorder = opt.disorders[k];
    spec.seed = derive_seed(opt.seed, k);
    spec.boundary = opt.boundary;
    seeds.push_back(spec.seed);
    evolutions.emplace_back(heisenberg_hamiltonian(spec));
  }
  const std::size_t nt = opt.times.size();
  std::vector<HeisenbergScanRow> rows(opt.disorders.size() * nt);
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t k = idx / nt;
    const double t = opt.times[idx % nt];
    const BoundReport b = tcount_lower_bound(evolutions[k].at(t));
    rows[idx] = {opt.disorders[k], t, b.choi_sre, b.sre_bound, b.nullity_bound, seeds[k]};
  });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.disorder != b.disorder ? a.disorder < b.disorder : a.t < b.t;
  });
  return rows;
}

/// Smallest sampled t > 0 from which every later sample at this W has
/// sre_bound > nullity_bound; empty when the last sample shows no advantage.
inline std::optional<double> advantage_onset(const std::vector<HeisenbergScanRow>& rows,
                                             double disorder) {
  std::optional<double> onset;
  for (const auto& r : rows) {
    if (r.disorder != disorder || r.t <= 0.0) continue;
    if (r.sre_bound > r.nullity_bound) {
      if (!onset) onset = r.t;
    } else {
      onset.reset();
    }
  }
  return onset;
}

// ---------------------------------------------------------------------------
// CCR_z(theta): R_z-type phase e^{i theta} on |111>, target qubit 2.

struct CcrzRow {
  double theta = 0.0;
  double choi_sre = 0.0;
  int sre_bound = 0;
  int nullity_bound = 0;
};

inline std::vector<CcrzRow> tcount_bound_ccrz(const std::vector<double>& thetas) {
  std::vector<CcrzRow> rows(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const BoundReport b = tcount_lower_bound(build_gate("ccrz", {thetas[i]}));
    rows[i] = {thetas[i], b.choi_sre, b.sre_bound, b.nullity_bound};
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV output, 12 significant digits.

namespace detail {
inline std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}
}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<RzScanRow>& rows) {
  out << "theta,amortized_sre_lb,strict_sre,strict_log_rom,strict_log_extent\n";
  for (const auto& r : rows) {
    out << detail::fmt12(r.theta) << ',' << detail::fmt12(r.amortized_sre_lb) << ','
        << detail::fmt12(r.strict_sre) << ',' << detail::fmt12(r.strict_log_rom) << ','
        << detail::fmt12(r.strict_log_extent) << '\n';
  }
}

inline void write_csv(std::ostream& out, const std::vector<HeisenbergScanRow>& rows) {
  out << "W,t,choi_sre,sre_bound,nullity_bound,seed\n";
  for (const auto& r : rows) {
    out << detail::fmt12(r.disorder) << ',' << detail::fmt12(r.t) << ','
        << detail::fmt12(r.choi_sre) << ',' << r.sre_bound << ',' << r.nullity_bound << ','
        << r.seed << '\n';
  }
}

inline void write_csv(std::ostream& out, const std::vector<CcrzRow>& rows) {
  out << "theta,choi_sre,sre_bound,nullity_bound\n";
  for (const auto& r : rows) {
    out << detail::fmt12(r.theta) << ',' << detail::fmt12(r.choi_sre) << ',' << r.sre_bound
        << ',' << r.nullity_bound << '\n';
  }
}

}  // namespace magic
