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
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace magic {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Amortized 2-SRE of the T gate, 2 - log2(3). Denominator of every T-count
/// bound produced by this library.
inline const double kTGateAmortizedSre = 2.0 - std::log2(3.0);

/// Amortized 2-SRE of CCZ, 5 - log2(11).
inline const double kCczAmortizedSre = 5.0 - std::log2(11.0);

/// Thrown for inconsistent qubit counts, bad indices and other caller errors.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine cannot deliver a result (non-convergence,
/// infeasibility, a violated numerical invariant).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::size_t dim_of(int n) { return std::size_t{1} << n; }

inline int popcount(std::uint64_t v) { return __builtin_popcountll(v); }

// i^k for integer k.
inline Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace detail {
inline std::atomic<int>& thread_count_storage() {
  static std::atomic<int> count{1};
  return count;
}

inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

/// Number of worker threads used by the parallel loops in this library.
/// Results never depend on it.
inline int thread_count() { return detail::thread_count_storage().load(); }

inline void set_thread_count(int threads) {
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  detail::thread_count_storage().store(threads);
}

/// Runs fn(i) for i in [0, count). Each index is handled by exactly one
/// worker, so writes to slot i of a preallocated output are race-free.
/// Nested calls from inside a worker, and loops shorter than min_count, run
/// serially.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_count = 2) {
  const auto workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1 || count < min_count || detail::inside_parallel_region()) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail::inside_parallel_region() = true;
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace magic
