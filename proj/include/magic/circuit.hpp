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

#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "magic/core.hpp"
#include "magic/state.hpp"

namespace magic {

// Rotation conventions follow R(theta) = exp(-i theta P) for P in {X, Z}, so
// T equals rz(pi/8) up to global phase. ccrz(theta) applies the phase gate
// diag(1, e^{i theta}) to qubit 2 controlled on qubits 0 and 1, which makes
// ccrz(pi) exactly CCZ.

struct GateInfo {
  int qubits;  // 0 means "any number >= 1" (qft, id)
  int params;
  bool clifford;
};

inline const std::map<std::string, GateInfo>& gate_table() {
  static const std::map<std::string, GateInfo> table = {
      {"id", {0, 0, true}},     {"h", {1, 0, true}},      {"s", {1, 0, true}},
      {"sdg", {1, 0, true}},    {"x", {1, 0, true}},      {"y", {1, 0, true}},
      {"z", {1, 0, true}},      {"t", {1, 0, false}},     {"tdg", {1, 0, false}},
      {"sqrtt", {1, 0, false}}, {"sqrttdg", {1, 0, false}}, {"rz", {1, 1, false}},
      {"rx", {1, 1, false}},    {"cnot", {2, 0, true}},   {"cz", {2, 0, true}},
      {"swap", {2, 0, true}},   {"ccz", {3, 0, false}},   {"ccrz", {3, 1, false}},
      {"qft", {0, 0, false}},
  };
  return table;
}

namespace detail {
inline std::string canonical_gate_name(std::string name) {
  for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (name == "cx") return "cnot";
  if (name == "sqrt_t" || name == "sqrt-t") return "sqrtt";
  if (name == "sqrt_tdg" || name == "sqrt-tdg") return "sqrttdg";
  if (name == "i") return "id";
  return name;
}

inline CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline CMatrix diagonal_with_last(int n, Complex last_minus_one, Complex last) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  CMatrix m = CMatrix::Identity(d, d);
  m(d - 2, d - 2) = last_minus_one;
  m(d - 1, d - 1) = last;
  return m;
}
}  // namespace detail

inline bool is_supported_gate(const std::string& name) {
  return gate_table().count(detail::canonical_gate_name(name)) > 0;
}

/// Matrix of a named gate acting on `n` qubits (n only matters for qft/id).
inline UnitaryMatrix build_gate(const std::string& raw_name, const std::vector<double>& params,
                                int n = 0) {
  const std::string name = detail::canonical_gate_name(raw_name);
  const auto it = gate_table().find(name);
  if (it == gate_table().end()) throw DimensionError("unknown gate '" + raw_name + "'");
  const GateInfo& info = it->second;
  if (static_cast<int>(params.size()) != info.params) {
    throw DimensionError("gate '" + name + "' expects " + std::to_string(info.params) +
                         " parameter(s)");
  }
  const int k = info.qubits == 0 ? n : info.qubits;
  if (info.qubits != 0 && n != 0 && n != info.qubits) {
    throw DimensionError("gate '" + name + "' acts on " + std::to_string(info.qubits) +
                         " qubit(s)");
  }
  if (k < 1) throw DimensionError("gate '" + name + "' needs a qubit count");
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix m;
  if (name == "id") {
    const auto d = static_cast<Eigen::Index>(dim_of(k));
    m = CMatrix::Identity(d, d);
  } else if (name == "h") {
    m.resize(2, 2);
    m << r, r, r, -r;
  } else if (name == "s") {
    m = detail::diag2(1.0, i);
  } else if (name == "sdg") {
    m = detail::diag2(1.0, -i);
  } else if (name == "x") {
    m.resize(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
  } else if (name == "y") {
    m.resize(2, 2);
    m << 0.0, -i, i, 0.0;
  } else if (name == "z") {
    m = detail::diag2(1.0, -1.0);
  } else if (name == "t") {
    m = detail::diag2(1.0, std::polar(1.0, kPi / 4));
  } else if (name == "tdg") {
    m = detail::diag2(1.0, std::polar(1.0, -kPi / 4));
  } else if (name == "sqrtt") {
    m = detail::diag2(1.0, std::polar(1.0, kPi / 8));
  } else if (name == "sqrttdg") {
    m = detail::diag2(1.0, std::polar(1.0, -kPi / 8));
  } else if (name == "rz") {
    m = detail::diag2(std::polar(1.0, -params[0]), std::polar(1.0, params[0]));
  } else if (name == "rx") {
    const double c = std::cos(params[0]);
    const double s = std::sin(params[0]);
    m.resize(2, 2);
    m << c, -i * s, -i * s, c;
  } else if (name == "cnot") {
    m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  } else if (name == "cz") {
    m = CMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
  } else if (name == "swap") {
    m = CMatrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  } else if (name == "ccz") {
    m = detail::diagonal_with_last(3, 1.0, -1.0);
  } else if (name == "ccrz") {
    m = detail::diagonal_with_last(3, 1.0, std::polar(1.0, params[0]));
  } else if (name == "qft") {
    const auto d = static_cast<Eigen::Index>(dim_of(k));
    m.resize(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index row = 0; row < d; ++row) {
      for (Eigen::Index col = 0; col < d; ++col) {
        // Reduce the exponent mod d before the trig call to keep it exact.
        const auto e = static_cast<double>((row * col) % d);
        m(row, col) = std::polar(norm, 2.0 * kPi * e / static_cast<double>(d));
      }
    }
  }
  return UnitaryMatrix(k, std::move(m));
}

/// Embeds a k-qubit gate on the listed target qubits of an n-qubit register.
/// targets[0] is the gate's most significant qubit.
inline UnitaryMatrix embed_gate(const UnitaryMatrix& gate, const std::vector<int>& targets,
                                int n) {
  if (static_cast<int>(targets.size()) != gate.n()) {
    throw DimensionError("target count does not match gate size");
  }
  std::uint64_t target_mask = 0;
  for (int t : targets) {
    if (t < 0 || t >= n) throw DimensionError("qubit index out of range");
    const std::uint64_t bit = qubit_bit(n, t);
    if (target_mask & bit) throw DimensionError("repeated target qubit");
    target_mask |= bit;
  }
  const std::uint64_t d = dim_of(n);
  const int k = gate.n();
  auto sub_index = [&](std::uint64_t full) {
    std::uint64_t s = 0;
    for (int j = 0; j < k; ++j) {
      if (full & qubit_bit(n, targets[static_cast<std::size_t>(j)])) s |= qubit_bit(k, j);
    }
    return s;
  };
  auto scatter = [&](std::uint64_t sub) {
    std::uint64_t f = 0;
    for (int j = 0; j < k; ++j) {
      if (sub & qubit_bit(k, j)) f |= qubit_bit(n, targets[static_cast<std::size_t>(j)]);
    }
    return f;
  };
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const CMatrix& g = gate.matrix();
  for (std::uint64_t col = 0; col < d; ++col) {
    const std::uint64_t rest = col & ~target_mask;
    const std::uint64_t sc = sub_index(col);
    for (std::uint64_t sr = 0; sr < gate.dim(); ++sr) {
      const Complex v = g(static_cast<Eigen::Index>(sr), static_cast<Eigen::Index>(sc));
      if (v != Complex(0.0)) {
        m(static_cast<Eigen::Index>(rest | scatter(sr)), static_cast<Eigen::Index>(col)) = v;
      }
    }
  }
  return UnitaryMatrix(n, std::move(m));
}

struct GateOp {
  std::string name;
  std::vector<double> params;
  std::vector<int> targets;
};

struct CircuitSpec {
  int n = 0;
  std::vector<GateOp> gates;
};

inline bool is_clifford_circuit(const CircuitSpec& spec) {
  for (const auto& g : spec.gates) {
    if (!gate_table().at(detail::canonical_gate_name(g.name)).clifford) return false;
  }
  return true;
}

/// Product of the embedded gates, first gate applied first.
inline UnitaryMatrix run_circuit(const CircuitSpec& spec) {
  if (spec.n < 1) throw DimensionError("circuit needs at least one qubit");
  CMatrix acc = CMatrix::Identity(static_cast<Eigen::Index>(dim_of(spec.n)),
                                  static_cast<Eigen::Index>(dim_of(spec.n)));
  for (const auto& op : spec.gates) {
    const auto gate = build_gate(op.name, op.params, static_cast<int>(op.targets.size()));
    acc = embed_gate(gate, op.targets, spec.n).matrix() * acc;
  }
  return UnitaryMatrix(spec.n, std::move(acc));
}

namespace detail {
inline double parse_angle(std::string token) {
  // Accepts plain numbers and the forms "pi", "pi/8", "3*pi/4", "-pi/16".
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  token = trim(token);
  if (token.empty()) throw DimensionError("empty gate parameter");
  const auto pi_pos = token.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw DimensionError("bad gate parameter '" + token + "'");
    return v;
  }
  double factor = 1.0;
  std::string head = trim(token.substr(0, pi_pos));
  std::string tail = trim(token.substr(pi_pos + 2));
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw DimensionError("bad gate parameter '" + token + "'");
    head.pop_back();
    factor = std::stod(head);
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw DimensionError("bad gate parameter '" + token + "'");
    factor /= std::stod(tail.substr(1));
  }
  return factor * kPi;
}
}  // namespace detail

/// Parses a gate token such as "rz(pi/8)" or "t" into name and parameters.
inline GateOp parse_gate_token(const std::string& token) {
  GateOp op;
  const auto open = token.find('(');
  if (open == std::string::npos) {
    op.name = detail::canonical_gate_name(token);
  } else {
    const auto close = token.rfind(')');
    if (close == std::string::npos || close < open) {
      throw DimensionError("unbalanced parentheses in '" + token + "'");
    }
    op.name = detail::canonical_gate_name(token.substr(0, open));
    std::stringstream ss(token.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(ss, item, ',')) op.params.push_back(detail::parse_angle(item));
  }
  if (!is_supported_gate(op.name)) throw DimensionError("unknown gate '" + op.name + "'");
  return op;
}

/// Reads the text circuit format: one gate per line,
/// `name[(param,...)] q0 [q1 [q2 ...]]`, with `#` starting a comment.
/// An optional `qubits N` line fixes the register size; otherwise it is one
/// more than the largest index used.
inline CircuitSpec parse_circuit(std::istream& in) {
  CircuitSpec spec;
  int declared = -1;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "qubits") {
      if (!(ss >> declared) || declared < 1) {
        throw DimensionError("line " + std::to_string(line_no) + ": bad qubit declaration");
      }
      continue;
    }
    GateOp op;
    try {
      op = parse_gate_token(head);
    } catch (const std::exception& e) {
      throw DimensionError("line " + std::to_string(line_no) + ": " + e.what());
    }
    int q = 0;
    while (ss >> q) {
      op.targets.push_back(q);
      max_index = std::max(max_index, q);
    }
    if (!ss.eof()) throw DimensionError("line " + std::to_string(line_no) + ": bad qubit index");
    if (op.targets.empty()) {
      throw DimensionError("line " + std::to_string(line_no) + ": gate without targets");
    }
    for (std::size_t a = 0; a < op.targets.size(); ++a) {
      for (std::size_t b = a + 1; b < op.targets.size(); ++b) {
        if (op.targets[a] == op.targets[b]) {
          throw DimensionError("line " + std::to_string(line_no) + ": repeated qubit index");
        }
      }
    }
    const auto& info = gate_table().at(op.name);
    if (info.qubits != 0 && static_cast<int>(op.targets.size()) != info.qubits) {
      throw DimensionError("line " + std::to_string(line_no) + ": wrong number of targets");
    }
    if (static_cast<int>(op.params.size()) != info.params) {
      throw DimensionError("line " + std::to_string(line_no) + ": wrong number of parameters");
    }
    spec.gates.push_back(std::move(op));
  }
  spec.n = declared > 0 ? declared : max_index + 1;
  if (spec.n < 1) throw DimensionError("circuit has no qubits");
  if (max_index >= spec.n) throw DimensionError("qubit index out of range");
  return spec;
}

inline CircuitSpec parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

/// (U (x) I) 2^{-n/2} sum_i |i>|i>; the first n qubits carry U.
inline StateVector choi_state(const UnitaryMatrix& u) {
  const std::size_t d = u.dim();
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t col = 0; col < d; ++col) {
    for (std::size_t row = 0; row < d; ++row) {
      v[static_cast<Eigen::Index>(row * d + col)] =
          u.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) * norm;
    }
  }
  return StateVector::normalized(2 * u.n(), std::move(v));
}

}  // namespace magic
