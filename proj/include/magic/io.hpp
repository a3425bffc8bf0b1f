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
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "magic/amortization.hpp"
#include "magic/circuit.hpp"
#include "magic/core.hpp"
#include "magic/state.hpp"
#include "magic/tcount.hpp"

namespace magic {

// State files: {"n": 2, "re": [...], "im": [...]}, computational basis with
// qubit 0 as the most significant bit. Amplitudes are renormalized on load.

inline nlohmann::json state_to_json(const StateVector& s) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    re.push_back(s[i].real());
    im.push_back(s[i].imag());
  }
  return {{"n", s.n()}, {"re", re}, {"im", im}};
}

inline StateVector state_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("re")) {
    throw DimensionError("state JSON needs fields \"n\" and \"re\"");
  }
  const int n = j.at("n").get<int>();
  if (n < 1 || n > 16) throw DimensionError("state JSON qubit count out of range");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                                   : std::vector<double>(re.size(), 0.0);
  if (re.size() != dim_of(n) || im.size() != re.size()) {
    throw DimensionError("state JSON amplitude count does not match 2^n");
  }
  CVector amps(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) amps[static_cast<Eigen::Index>(i)] = {re[i], im[i]};
  if (amps.norm() < 1e-12) throw DimensionError("state JSON has zero norm");
  return StateVector::normalized(n, amps);
}

inline StateVector read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DimensionError("cannot open state file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DimensionError("malformed state file " + path + ": " + e.what());
  }
  return state_from_json(j);
}

// ---------------------------------------------------------------------------
// Named input states

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"zero",     "plus",        "minus",
                                              "plus-i",   "t-plus",      "sqrt-t-plus",
                                              "magic-pi10", "ccz-plus",  "bell"};
  return names;
}

namespace detail {
inline StateVector phase_plus(double phi) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector a(2);
  a << r, std::polar(r, phi);
  return StateVector(1, a);
}

inline StateVector tensor_power(const StateVector& s, int n) {
  StateVector out = s;
  for (int k = 1; k < n; ++k) out = tensor(out, s);
  return out;
}
}  // namespace detail

/// Single-qubit presets are tensored up to `n` qubits; "ccz-plus" (3 qubits)
/// and "bell" (2 qubits) have fixed size.
inline StateVector preset_state(const std::string& name, int n = 1) {
  if (n < 1) throw DimensionError("preset needs at least one qubit");
  if (name == "ccz-plus") return build_gate("ccz", {}).apply(StateVector::plus(3));
  if (name == "bell") {
    CVector a = CVector::Zero(4);
    a[0] = a[3] = 1.0 / std::sqrt(2.0);
    return StateVector(2, a);
  }
  static const std::map<std::string, double> phases{
      {"plus", 0.0},         {"minus", kPi},          {"plus-i", kPi / 2},
      {"t-plus", kPi / 4},   {"sqrt-t-plus", kPi / 8}, {"magic-pi10", kPi / 10}};
  if (name == "zero") return StateVector::basis(n, 0);
  const auto it = phases.find(name);
  if (it == phases.end()) throw DimensionError("unknown preset state '" + name + "'");
  return detail::tensor_power(detail::phase_plus(it->second), n);
}

inline bool is_preset(const std::string& name) {
  for (const auto& p : preset_names()) {
    if (p == name) return true;
  }
  return false;
}

/// A preset name, a .json state file, or a circuit file applied to |0...0>.
inline StateVector resolve_input_state(const std::string& spec, int n = 1) {
  if (is_preset(spec)) return preset_state(spec, n);
  if (!std::filesystem::exists(spec)) {
    throw DimensionError("input '" + spec + "' is neither a preset nor an existing file");
  }
  if (std::filesystem::path(spec).extension() == ".json") return read_state_file(spec);
  std::ifstream in(spec);
  const CircuitSpec circuit = parse_circuit(in);
  return run_circuit(circuit).apply(StateVector::basis(circuit.n, 0));
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::json report_to_json(const OptimizerReport& r, bool include_wall_time = false) {
  nlohmann::json j{{"best_value", r.best_value},
                   {"best_state", state_to_json(r.best_state)},
                   {"restarts_run", r.restarts_run},
                   {"iterations", r.iterations},
                   {"final_gradient_norm", r.final_gradient_norm},
                   {"converged", r.converged},
                   {"termination", to_string(r.termination)},
                   {"gradient_check_error", r.gradient_check_error},
                   {"seed", r.seed},
                   {"ancillas", r.ancillas},
                   {"alpha", r.alpha}};
  if (include_wall_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

inline nlohmann::json report_to_json(const BoundReport& r) {
  return {{"gate", r.label},
          {"choi_sre", r.choi_sre},
          {"sre_bound", r.sre_bound},
          {"nullity_bound", r.nullity_bound}};
}

}  // namespace magic
