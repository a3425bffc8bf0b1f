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
#include <sstream>

#include "magic/circuit.hpp"
#include "magic/tcount.hpp"

namespace magic {
namespace {

const double kT = 2 - std::log2(3.0);

// Seven-T Clifford+T circuit for CCZ: the bound may never exceed its T-count.
const char* kCczCircuit = R"(
cnot 1 2
tdg 2
cnot 0 2
t 2
cnot 1 2
tdg 2
cnot 0 2
t 1
t 2
cnot 0 1
t 0
tdg 1
cnot 0 1
)";

// Textbook QFT_3. A controlled phase phi is phase(phi/2) on both wires
// around a CNOT pair with phase(-phi/2) on the target.
const char* kQft3Circuit = R"(
qubits 3
h 0
# controlled-S(1 -> 0)
t 0
t 1
cnot 1 0
tdg 0
cnot 1 0
# controlled-T(2 -> 0)
sqrtt 0
sqrtt 2
cnot 2 0
sqrttdg 0
cnot 2 0
h 1
# controlled-S(2 -> 1)
t 1
t 2
cnot 2 1
tdg 1
cnot 2 1
h 2
swap 0 2
)";

int count_t(const char* text) {
  int count = 0;
  for (const auto& op : parse_circuit(text).gates) {
    if (op.name == "t" || op.name == "tdg") ++count;
  }
  return count;
}

double phase_distance(const CMatrix& a, const CMatrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  return (a - (a(r, c) / b(r, c)) * b).norm();
}

TEST(Bound, CeilingWithSlack) {
  EXPECT_EQ(sre_tcount_bound(0.0), 0);
  EXPECT_EQ(sre_tcount_bound(kT), 1);
  EXPECT_EQ(sre_tcount_bound(3 * kT), 3);
  EXPECT_EQ(sre_tcount_bound(3 * kT + 1e-6), 4);
  EXPECT_EQ(sre_tcount_bound(-1e-12), 0);
}

TEST(Bound, HeadlineTable) {
  const auto qft3 = tcount_lower_bound(build_gate("qft", {}, 3));
  EXPECT_EQ(qft3.sre_bound, 6);
  EXPECT_EQ(qft3.nullity_bound, 4);
  const auto qft4 = tcount_lower_bound(build_gate("qft", {}, 4));
  EXPECT_EQ(qft4.sre_bound, 8);
  EXPECT_EQ(qft4.nullity_bound, 6);
  const auto ccz = tcount_lower_bound(build_gate("ccz", {}));
  EXPECT_EQ(ccz.sre_bound, 4);
  EXPECT_EQ(ccz.nullity_bound, 3);
  EXPECT_NEAR(ccz.choi_sre, 5 - std::log2(11.0), 1e-12);
  const auto t = tcount_lower_bound(build_gate("t", {}));
  EXPECT_EQ(t.sre_bound, 1);
  EXPECT_EQ(t.nullity_bound, 1);
}

TEST(Bound, CliffordsGiveZero) {
  for (const auto& [name, info] : gate_table()) {
    if (!info.clifford) continue;
    std::vector<double> params(static_cast<std::size_t>(info.params), 0.0);
    const auto b = tcount_lower_bound(build_gate(name, params, info.qubits == 0 ? 2 : 0));
    EXPECT_EQ(b.sre_bound, 0) << name;
    EXPECT_EQ(b.nullity_bound, 0) << name;
  }
  const auto b = tcount_lower_bound(run_circuit(parse_circuit("h 0\ncnot 0 1\ns 2\ncz 2 3\n")));
  EXPECT_EQ(b.sre_bound, 0);
  EXPECT_EQ(b.nullity_bound, 0);
}

TEST(Bound, CliffordDressingLeavesChoiSreUnchanged) {
  const auto u = build_gate("ccz", {}) * run_circuit(parse_circuit("t 1\nh 2\n"));
  const auto c1 = run_circuit(parse_circuit("qubits 3\nh 0\ncnot 0 2\ns 1\n"));
  const auto c2 = run_circuit(parse_circuit("qubits 3\ncz 1 2\nh 1\nswap 0 1\n"));
  EXPECT_NEAR(tcount_lower_bound(c1 * u * c2).choi_sre, tcount_lower_bound(u).choi_sre, 1e-9);
}

TEST(Bound, NeverExceedsKnownCircuits) {
  const auto ccz = run_circuit(parse_circuit(kCczCircuit));
  ASSERT_LT(phase_distance(ccz.matrix(), build_gate("ccz", {}).matrix()), 1e-12);
  EXPECT_LE(tcount_lower_bound(ccz).sre_bound, count_t(kCczCircuit));

  const auto qft = run_circuit(parse_circuit(kQft3Circuit));
  ASSERT_LT(phase_distance(qft.matrix(), build_gate("qft", {}, 3).matrix()), 1e-12);
  EXPECT_EQ(tcount_lower_bound(qft).sre_bound, 6);
}

TEST(Bound, SizeGuard) {
  EXPECT_THROW(tcount_lower_bound(build_gate("qft", {}, 5)), DimensionError);
}

TEST(ScanRz, EndpointsAndBoostRegime) {
  RzScanOptions o;
  o.seed = 81;
  const auto rows = scan_rz({0.0, kPi / 16, kPi / 8}, o);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].amortized_sre_lb, 0.0, 1e-9);
  EXPECT_NEAR(rows[0].strict_sre, 0.0, 1e-9);
  EXPECT_NEAR(rows[0].strict_log_rom, 0.0, 1e-9);
  EXPECT_NEAR(rows[0].strict_log_extent, 0.0, 1e-6);
  EXPECT_GT(rows[1].amortized_sre_lb, rows[1].strict_sre + 1e-3);
  EXPECT_NEAR(rows[2].amortized_sre_lb, kT, 1e-6);
  EXPECT_NEAR(rows[2].strict_sre, kT, 1e-9);
  EXPECT_NEAR(rows[2].strict_log_rom, 0.5, 1e-6);
  for (const auto& r : rows) EXPECT_GE(r.amortized_sre_lb, r.strict_sre - 1e-12);
}

TEST(ScanRz, RejectsAnglesOutsideRange) {
  EXPECT_THROW(scan_rz({2.0}), DimensionError);
}

TEST(ScanRz, CsvSchema) {
  std::ostringstream os;
  write_csv(os, std::vector<RzScanRow>{{0.5, 0.1, 0.05, 0.2, 0.1}});
  EXPECT_EQ(os.str(),
            "theta,amortized_sre_lb,strict_sre,strict_log_rom,strict_log_extent\n"
            "0.5,0.1,0.05,0.2,0.1\n");
}

TEST(ScanHeisenberg, ZeroTimeAndDeterminism) {
  HeisenbergScanOptions o;
  o.times = linear_grid(0.0, 2.0, 5);
  o.seed = 82;
  set_thread_count(1);
  const auto a = scan_heisenberg(o);
  set_thread_count(4);
  const auto b = scan_heisenberg(o);
  set_thread_count(1);
  ASSERT_EQ(a.size(), o.disorders.size() * o.times.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].choi_sre, b[i].choi_sre);
    EXPECT_EQ(a[i].seed, b[i].seed);
    if (a[i].t == 0.0) {
      EXPECT_EQ(a[i].sre_bound, 0);
      EXPECT_EQ(a[i].nullity_bound, 0);
    }
  }
  std::ostringstream os;
  write_csv(os, a);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "W,t,choi_sre,sre_bound,nullity_bound,seed");
}

TEST(ScanHeisenberg, RowsSortedAndSeedsPerDisorder) {
  HeisenbergScanOptions o;
  o.times = {1.0, 0.0, 0.5};
  o.disorders = {2.0, 0.5};
  const auto rows = scan_heisenberg(o);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i - 1].disorder < rows[i].disorder ||
                (rows[i - 1].disorder == rows[i].disorder && rows[i - 1].t < rows[i].t));
  }
  EXPECT_NE(rows.front().seed, rows.back().seed);
}

TEST(ScanHeisenberg, GuardOnChainLength) {
  HeisenbergScanOptions o;
  o.sites = 5;
  EXPECT_THROW(scan_heisenberg(o), DimensionError);
}

TEST(AdvantageOnset, Definition) {
  std::vector<HeisenbergScanRow> rows{{1, 0.0, 0, 0, 0, 1}, {1, 0.1, 0, 2, 3, 1},
                                      {1, 0.2, 0, 4, 3, 1}, {1, 0.3, 0, 3, 3, 1},
                                      {1, 0.4, 0, 5, 3, 1}, {1, 0.5, 0, 6, 3, 1}};
  EXPECT_DOUBLE_EQ(*advantage_onset(rows, 1.0), 0.4);
  rows.back().sre_bound = 3;
  EXPECT_FALSE(advantage_onset(rows, 1.0).has_value());
}

TEST(Ccrz, KnownPoints) {
  const auto rows = tcount_bound_ccrz({0.0, kPi});
  EXPECT_EQ(rows[0].sre_bound, 0);
  EXPECT_EQ(rows[1].sre_bound, 4);
  EXPECT_EQ(rows[1].nullity_bound, 3);
}

TEST(Ccrz, AtLeastFourOnTheCentralInterval) {
  for (const auto& r : tcount_bound_ccrz(linear_grid(2 * kPi / 3, 4 * kPi / 3, 25))) {
    EXPECT_GE(r.sre_bound, 4) << r.theta;
  }
}

}  // namespace
}  // namespace magic
