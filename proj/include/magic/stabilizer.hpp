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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/state.hpp"

namespace magic {

/// 2^n prod_{k=1}^n (2^k + 1): 6, 60, 1080, 36720, ...
inline std::size_t stabilizer_state_count(int n) {
  std::size_t count = dim_of(n);
  for (int k = 1; k <= n; ++k) count *= dim_of(k) + 1;
  return count;
}

/// True iff exactly 2^n Paulis have |<P>| >= 1 - 1e-8.
inline bool is_stabilizer_state(const StateVector& state) {
  const auto spectrum = full_spectrum(state);
  std::size_t hits = 0;
  for (double v : spectrum.values()) {
    if (std::abs(v) >= 1.0 - 1e-8) ++hits;
  }
  return hits == state.dim();
}

/// All pure stabilizer states of n qubits, each with its first nonzero
/// amplitude real and positive.
class StabilizerSet {
 public:
  StabilizerSet() = default;
  StabilizerSet(int n, std::vector<StateVector> states) : n_(n), states_(std::move(states)) {}

  int n() const { return n_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<StateVector>& states() const { return states_; }
  const StateVector& operator[](std::size_t i) const { return states_[i]; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

  /// Index of the entry equal to `state` up to global phase, or size().
  std::size_t find(const StateVector& state, double tol = 1e-9) const {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].fidelity(state) > 1.0 - tol) return i;
    }
    return states_.size();
  }

 private:
  int n_ = 0;
  std::vector<StateVector> states_;
};

namespace detail {

// Amplitude codes: 0 = zero, 1..4 = +1, +i, -1, -i (times the common norm).
inline std::uint8_t phase_code(Complex v) {
  if (std::abs(v) < 1e-12) return 0;
  if (v.real() > 0.5 * std::abs(v)) return 1;
  if (v.imag() > 0.5 * std::abs(v)) return 2;
  if (v.real() < -0.5 * std::abs(v)) return 3;
  return 4;
}

inline StateVector state_from_codes(int n, const std::vector<std::uint8_t>& codes) {
  CVector v(static_cast<Eigen::Index>(codes.size()));
  for (std::size_t i = 0; i < codes.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = codes[i] == 0 ? Complex(0.0) : i_pow(codes[i] - 1);
  }
  return StateVector::normalized(n, std::move(v));
}

struct CodeHash {
  std::size_t operator()(const std::vector<std::uint8_t>& c) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : c) h = (h ^ b) * 1099511628211ULL;
    return h;
  }
};

// All k-dimensional subspaces of F_2^n in reduced row echelon form. Columns are
// ordered from the most significant bit; each basis vector is an n-bit mask.
inline void rref_subspaces(int n, int k, std::vector<std::vector<std::uint64_t>>& out) {
  std::vector<int> pivots(static_cast<std::size_t>(k));
  // Choose pivot columns (bit positions counted from the MSB side).
  auto choose = [&](auto&& self, int start, int idx) -> void {
    if (idx == k) {
      std::uint64_t pivot_mask = 0;
      for (int p : pivots) pivot_mask |= std::uint64_t{1} << (n - 1 - p);
      // Free positions for row r: columns right of its pivot that are not pivots.
      std::vector<std::vector<int>> free(static_cast<std::size_t>(k));
      int total_free = 0;
      for (int r = 0; r < k; ++r) {
        for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
          if (!(pivot_mask & (std::uint64_t{1} << (n - 1 - c)))) {
            free[static_cast<std::size_t>(r)].push_back(c);
            ++total_free;
          }
        }
      }
      for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << total_free); ++fill) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(k));
        int used = 0;
        for (int r = 0; r < k; ++r) {
          std::uint64_t row = std::uint64_t{1} << (n - 1 - pivots[static_cast<std::size_t>(r)]);
          for (int c : free[static_cast<std::size_t>(r)]) {
            if (fill & (std::uint64_t{1} << used)) row |= std::uint64_t{1} << (n - 1 - c);
            ++used;
          }
          rows[static_cast<std::size_t>(r)] = row;
        }
        out.push_back(std::move(rows));
      }
      return;
    }
    for (int c = start; c <= n - (k - idx); ++c) {
      pivots[static_cast<std::size_t>(idx)] = c;
      self(self, c + 1, idx + 1);
    }
  };
  choose(choose, 0, 0);
}

}  // namespace detail

inline constexpr int kMaxStabilizerQubits = 4;

/// Enumerates every n-qubit pure stabilizer state as
///   |psi> ~ sum_{y in F_2^k} i^{l.y} (-1)^{c.y + sum_{i<j} Q_ij y_i y_j} |x0 + G y>
/// over affine subspaces x0 + span(G), linear forms l, c and quadratic forms Q.
/// n = 4 (36720 states) must be requested explicitly with allow_large.
inline StabilizerSet enumerate_stabilizer_states(int n, bool allow_large = false) {
  if (n < 1 || n > kMaxStabilizerQubits) {
    throw DimensionError("stabilizer enumeration supports 1 <= n <= 4");
  }
  if (n == 4 && !allow_large) {
    throw DimensionError("n = 4 stabilizer enumeration requires the allow_large flag");
  }
  const std::size_t d = dim_of(n);
  std::vector<StateVector> states;
  states.reserve(stabilizer_state_count(n));
  std::unordered_set<std::vector<std::uint8_t>, detail::CodeHash> seen;
  std::vector<std::uint8_t> codes(d);
  std::vector<Complex> amp(d);

  for (int k = 0; k <= n; ++k) {
    std::vector<std::vector<std::uint64_t>> subspaces;
    detail::rref_subspaces(n, k, subspaces);
    const int pairs = k * (k - 1) / 2;
    for (const auto& gens : subspaces) {
      std::uint64_t pivot_mask = 0;
      for (auto g : gens) pivot_mask |= std::uint64_t{1} << (63 - __builtin_clzll(g));
      for (std::uint64_t x0 = 0; x0 < d; ++x0) {
        if (x0 & pivot_mask) continue;  // coset representatives
        for (std::uint64_t l = 0; l < dim_of(k); ++l) {
          for (std::uint64_t c = 0; c < dim_of(k); ++c) {
            for (std::uint64_t q = 0; q < (std::uint64_t{1} << pairs); ++q) {
              std::fill(amp.begin(), amp.end(), Complex(0.0));
              for (std::uint64_t y = 0; y < dim_of(k); ++y) {
                std::uint64_t x = x0;
                for (int i = 0; i < k; ++i) {
                  if (y & (std::uint64_t{1} << i)) x ^= gens[static_cast<std::size_t>(i)];
                }
                int sign = popcount(c & y);
                int pair = 0;
                for (int i = 0; i < k; ++i) {
                  for (int j = i + 1; j < k; ++j, ++pair) {
                    if ((q >> pair & 1) && (y >> i & 1) && (y >> j & 1)) ++sign;
                  }
                }
                amp[x] = i_pow(popcount(l & y) + 2 * sign);
              }
              // Canonical phase: first nonzero amplitude becomes +1.
              std::size_t first = 0;
              while (amp[first] == Complex(0.0)) ++first;
              const Complex fix = std::conj(amp[first]);
              for (std::size_t i = 0; i < d; ++i) codes[i] = detail::phase_code(amp[i] * fix);
              if (seen.insert(codes).second) {
                states.push_back(detail::state_from_codes(n, codes));
              }
            }
          }
        }
      }
    }
  }
  if (states.size() != stabilizer_state_count(n)) {
    throw NumericalError("stabilizer enumeration produced " + std::to_string(states.size()) +
                         " states, expected " + std::to_string(stabilizer_state_count(n)));
  }
  return StabilizerSet(n, std::move(states));
}

// Binary cache layout: "MSTB", u32 version, u32 n, u64 count, then count * 2^n
// amplitude codes (one byte each, see phase_code).
inline constexpr std::uint32_t kStabilizerCacheVersion = 1;

inline std::filesystem::path stabilizer_cache_path(const std::filesystem::path& dir, int n) {
  return dir / ("stab_n" + std::to_string(n) + "_v" + std::to_string(kStabilizerCacheVersion) +
                ".bin");
}

inline void save_stabilizer_cache(const StabilizerSet& set, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write stabilizer cache " + file.string());
  const std::uint32_t version = kStabilizerCacheVersion;
  const auto n = static_cast<std::uint32_t>(set.n());
  const std::uint64_t count = set.size();
  out.write("MSTB", 4);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const auto& s : set) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const auto code = static_cast<char>(detail::phase_code(s[i]));
      out.write(&code, 1);
    }
  }
}

/// Returns an empty optional-like set (n() == 0) when the file is missing or
/// does not match the requested n and format version.
inline StabilizerSet load_stabilizer_cache(const std::filesystem::path& file, int n) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return {};
  char tag[4];
  std::uint32_t version = 0;
  std::uint32_t stored_n = 0;
  std::uint64_t count = 0;
  in.read(tag, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&stored_n), sizeof stored_n);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || std::string(tag, 4) != "MSTB" || version != kStabilizerCacheVersion ||
      stored_n != static_cast<std::uint32_t>(n) || count != stabilizer_state_count(n)) {
    return {};
  }
  std::vector<StateVector> states;
  states.reserve(count);
  std::vector<std::uint8_t> codes(dim_of(n));
  for (std::uint64_t s = 0; s < count; ++s) {
    in.read(reinterpret_cast<char*>(codes.data()), static_cast<std::streamsize>(codes.size()));
    if (!in) return {};
    states.push_back(detail::state_from_codes(n, codes));
  }
  return StabilizerSet(n, std::move(states));
}

/// Enumerates, going through the cache directory named by MAGIC_STAB_CACHE
/// (when set) to skip repeated n = 3, 4 enumerations.
inline StabilizerSet stabilizer_states(int n, bool allow_large = false) {
  const char* dir = std::getenv("MAGIC_STAB_CACHE");
  if (dir == nullptr || *dir == '\0') return enumerate_stabilizer_states(n, allow_large);
  if (n == 4 && !allow_large) {
    throw DimensionError("n = 4 stabilizer enumeration requires the allow_large flag");
  }
  const auto file = stabilizer_cache_path(dir, n);
  auto cached = load_stabilizer_cache(file, n);
  if (cached.n() == n) return cached;
  auto set = enumerate_stabilizer_states(n, allow_large);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  try {
    save_stabilizer_cache(set, file);
  } catch (const std::exception&) {
    // Unwritable cache directory: fall back to enumeration on every call.
  }
  return set;
}

}  // namespace magic
