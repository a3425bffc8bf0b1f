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

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "magic/core.hpp"
#include "magic/random.hpp"

namespace magic {
namespace {

TEST(Core, IPowCyclesWithPeriodFour) {
  EXPECT_EQ(i_pow(0), Complex(1, 0));
  EXPECT_EQ(i_pow(1), Complex(0, 1));
  EXPECT_EQ(i_pow(2), Complex(-1, 0));
  EXPECT_EQ(i_pow(3), Complex(0, -1));
  EXPECT_EQ(i_pow(-1), Complex(0, -1));
  EXPECT_EQ(i_pow(9), Complex(0, 1));
}

TEST(Core, AmortizedConstants) {
  EXPECT_NEAR(kTGateAmortizedSre, 0.41503749927884381, 1e-15);
  EXPECT_NEAR(kCczAmortizedSre, 1.5405683813627028, 1e-15);
}

TEST(Random, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Random, DerivedStreamsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(7, s));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Random, UniformAndNormalMoments) {
  Rng rng(3);
  double sum = 0, sq = 0, nsum = 0, nsq = 0;
  const int count = 200000;
  for (int k = 0; k < count; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
    const double g = rng.normal();
    nsum += g;
    nsq += g * g;
  }
  EXPECT_NEAR(sum / count, 0.5, 5e-3);
  EXPECT_NEAR(sq / count - 0.25, 1.0 / 12, 5e-3);
  EXPECT_NEAR(nsum / count, 0.0, 1e-2);
  EXPECT_NEAR(nsq / count, 1.0, 1e-2);
}

TEST(Random, BelowStaysInRange) {
  Rng rng(5);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (int threads : {1, 4}) {
    set_thread_count(threads);
    std::vector<std::atomic<int>> visits(1000);
    parallel_for(visits.size(), [&](std::size_t i) { visits[i]++; });
    for (auto& v : visits) EXPECT_EQ(v.load(), 1);
  }
  set_thread_count(1);
}

TEST(Parallel, NestedLoopsRunInline) {
  set_thread_count(4);
  std::vector<int> out(64, 0);
  parallel_for(8, [&](std::size_t i) {
    parallel_for(8, [&](std::size_t j) { out[i * 8 + j] = static_cast<int>(i * 8 + j); });
  });
  for (int k = 0; k < 64; ++k) EXPECT_EQ(out[static_cast<std::size_t>(k)], k);
  set_thread_count(1);
}

TEST(Parallel, PropagatesExceptions) {
  set_thread_count(3);
  EXPECT_THROW(parallel_for(100,
                            [](std::size_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  set_thread_count(1);
}

}  // namespace
}  // namespace magic
