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

// magic: command-line front end for stabilizer Renyi entropy, stabilizer
// decompositions, amortized magic and T-count bounds.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "magic/magic.hpp"

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
  std::string format;  // empty: subcommand default
  bool wall_time = false;
};

struct UnitaryArgs {
  std::string gate = "t";
  std::string circuit;
  int qubits = 0;
};

struct StateArgs {
  std::string input = "plus";
  int qubits = 1;
  std::string gate;
};

// Tabular and scalar results share one emitter.
struct Output {
  json data;
  std::string csv;   // empty when not tabular
  std::string text;  // plain rendering for --format text
  std::string default_format = "json";
};

struct Failure {
  std::string message;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

magic::UnitaryMatrix resolve_unitary(const UnitaryArgs& a) {
  if (!a.circuit.empty()) {
    std::ifstream in(a.circuit);
    if (!in) throw magic::DimensionError("cannot open circuit file " + a.circuit);
    return magic::run_circuit(magic::parse_circuit(in));
  }
  const magic::GateOp op = magic::parse_gate_token(a.gate);
  return magic::build_gate(op.name, op.params, a.qubits);
}

std::string unitary_label(const UnitaryArgs& a) {
  if (!a.circuit.empty()) return a.circuit;
  return a.qubits > 0 ? a.gate + "[" + std::to_string(a.qubits) + "]" : a.gate;
}

magic::StateVector resolve_state(const StateArgs& a) {
  magic::StateVector s = magic::resolve_input_state(a.input, a.qubits);
  if (!a.gate.empty()) {
    const magic::GateOp op = magic::parse_gate_token(a.gate);
    const auto u = magic::build_gate(op.name, op.params, magic::gate_table().at(op.name).qubits == 0 ? s.n() : 0);
    if (u.n() > s.n()) throw magic::DimensionError("gate acts on more qubits than the input");
    s = u.apply_with_ancillas(s);
  }
  return s;
}

void add_unitary_options(CLI::App* app, UnitaryArgs& a) {
  app->add_option("--gate", a.gate,
                  "Gate token, e.g. t, ccz, qft, rz(pi/8) (angles in radians; "
                  "rz(theta) = exp(-i theta Z), so t ~ rz(pi/8))")
      ->capture_default_str();
  app->add_option("--qubits", a.qubits, "Qubit count for size-generic gates (qft, id)")
      ->capture_default_str();
  app->add_option("--circuit", a.circuit, "Circuit file instead of --gate");
}

void add_state_options(CLI::App* app, StateArgs& a) {
  app->add_option("--input", a.input,
                  "Preset (zero, plus, minus, plus-i, t-plus, sqrt-t-plus, magic-pi10, "
                  "ccz-plus, bell), a .json state file, or a circuit file run on |0...0>")
      ->capture_default_str();
  app->add_option("--qubits", a.qubits, "Qubit count for single-qubit presets (tensor power)")
      ->capture_default_str();
  app->add_option("--gate", a.gate,
                  "Optional gate applied to the leading qubits of the input (angles in radians)");
}

void emit(const Output& out, const Common& c) {
  const std::string format = c.format.empty() ? out.default_format : c.format;
  std::string body;
  if (format == "json") {
    body = out.data.dump(2) + "\n";
  } else if (format == "csv") {
    if (out.csv.empty()) throw magic::DimensionError("this subcommand has no CSV output");
    body = out.csv;
  } else {
    body = out.text.empty() ? out.data.dump(2) + "\n" : out.text;
  }
  if (c.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw magic::DimensionError("cannot write " + c.output);
    f << body;
    std::cerr << "wrote " << c.output << "\n";
  }
}

// ---------------------------------------------------------------------------
// verify: randomized inequality checks, PSD lemmas and property suites.

struct CheckLine {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckLine> run_verification(std::uint64_t seed, int trials, bool direct) {
  using namespace magic;
  std::vector<CheckLine> lines;
  auto add = [&](std::string name, bool ok, std::string detail) {
    lines.push_back({std::move(name), ok, std::move(detail)});
  };
  for (auto g : {InequalityGate::kT, InequalityGate::kCcz}) {
    const auto r = verify_r2_inequalities(g, trials, derive_seed(seed, g == InequalityGate::kT ? 1 : 2));
    add(g == InequalityGate::kT ? "r2_inequality_t" : "r2_inequality_ccz", r.passed,
        "min " + fmt(r.min_value) + ", equality case " + fmt(r.equality_case_value));
  }
  for (const auto& c : verify_psd_lemmas(direct).checks) {
    add("psd " + c.name, c.passed, "value " + fmt(c.value));
  }
  const std::size_t counts[] = {6, 60, 1080};
  for (int n = 1; n <= 3; ++n) {
    const std::size_t got = stabilizer_states(n).size();
    add("stabilizer_count n=" + std::to_string(n), got == counts[n - 1], std::to_string(got));
  }
  Rng rng(derive_seed(seed, 3));
  double purity = 0.0;
  double additivity = 0.0;
  double clifford = 0.0;
  const auto cliff = run_circuit(parse_circuit("h 0\ncnot 0 1\ns 1\ncz 1 2\nh 2\n"));
  for (int k = 0; k < 20; ++k) {
    const auto a = StateVector::haar_random(1 + k % 3, rng);
    const auto b = StateVector::haar_random(1 + k % 2, rng);
    purity = std::max(purity, std::abs(full_spectrum(a).purity_sum() - double(dim_of(a.n()))));
    additivity = std::max(additivity, std::abs(renyi_entropy(tensor(a, b), 2.0).value -
                                               renyi_entropy(a, 2.0).value -
                                               renyi_entropy(b, 2.0).value));
    const auto c = StateVector::haar_random(3, rng);
    clifford = std::max(clifford, std::abs(renyi_entropy(cliff.apply(c), 2.0).value -
                                           renyi_entropy(c, 2.0).value));
  }
  add("purity_sum", purity < 1e-9, "max deviation " + fmt(purity));
  add("additivity", additivity < 1e-9, "max deviation " + fmt(additivity));
  add("clifford_invariance", clifford < 1e-9, "max deviation " + fmt(clifford));
  OptimizerOptions o;
  o.seed = derive_seed(seed, 4);
  const auto rep = amortized_sre_lower_bound(build_gate("t", {}), 2.0, 1, o);
  add("t_optimizer_ceiling",
      rep.best_value <= kTGateAmortizedSre + 1e-9 &&
          std::abs(rep.best_value - kTGateAmortizedSre) < 1e-6,
      "best " + fmt(rep.best_value));
  return lines;
}

// dagger-compare: lower bounds for U and U^dagger side by side.
json dagger_compare(const magic::UnitaryMatrix& u, int m, const magic::OptimizerOptions& o) {
  using namespace magic;
  const auto fwd = amortized_sre_lower_bound(u, 2.0, m, o);
  const auto bwd = amortized_sre_lower_bound(u.adjoint(), 2.0, m, o);
  json j{{"ancillas", m},
         {"restarts", o.restarts},
         {"seed", o.seed},
         {"u_lower_bound", fwd.best_value},
         {"u_dagger_lower_bound", bwd.best_value},
         {"difference", fwd.best_value - bwd.best_value}};
  if (u.n() <= 2) {
    j["u_strict"] = strict_amortized_sre(u, 2.0, true).value;
    j["u_dagger_strict"] = strict_amortized_sre(u.adjoint(), 2.0, true).value;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "magic: stabilizer Renyi entropy, stabilizer decompositions, amortized magic and "
      "T-count lower bounds.\nEntropies are in bits, angles in radians."};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Common common;
  app.add_option("--seed", common.seed, "RNG seed; 0 derives one from entropy and prints it")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads; <= 0 uses all cores")
      ->capture_default_str();
  app.add_option("--output,-o", common.output, "Write the result to this file instead of stdout");
  app.add_option("--format", common.format, "Output format (default depends on subcommand)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--wall-time", common.wall_time,
               "Include wall-clock time in optimizer reports (breaks byte-identical reruns)");

  double alpha = 2.0;
  auto alpha_opt = [&](CLI::App* sub) {
    sub->add_option("--alpha", alpha, "Renyi index alpha >= 0")->capture_default_str();
  };
  std::optional<int> ancillas;
  int restarts = 20;
  auto optimizer_opts = [&](CLI::App* sub) {
    sub->add_option("--ancillas", ancillas, "Ancilla count m (default: n; n + m <= 4)");
    sub->add_option("--restarts", restarts, "Random restarts")->capture_default_str();
  };

  Output result;
  std::function<void()> action;

  // sre ---------------------------------------------------------------------
  StateArgs sre_state;
  auto* sre = app.add_subcommand("sre", "Stabilizer Renyi entropy M_alpha of a state (bits)");
  add_state_options(sre, sre_state);
  alpha_opt(sre);
  sre->callback([&] {
    action = [&] {
      const auto s = resolve_state(sre_state);
      const auto v = magic::renyi_entropy(s, alpha);
      result.data = {{"n", s.n()}, {"alpha", alpha}, {"value", v.value}, {"r_alpha", v.r_alpha}};
      result.text = fmt(v.value) + "\n";
      result.default_format = "text";
    };
  });

  // spectrum ------------------------------------------------------------------
  StateArgs spec_state;
  auto* spectrum = app.add_subcommand("spectrum", "All 4^n Pauli expectation values of a state");
  add_state_options(spectrum, spec_state);
  spectrum->callback([&] {
    action = [&] {
      const auto sp = magic::full_spectrum(resolve_state(spec_state));
      std::ostringstream os;
      sp.write_csv(os);
      result.csv = os.str();
      json rows = json::array();
      for (std::size_t i = 0; i < sp.size(); ++i) {
        const auto p = sp.pauli(i);
        rows.push_back({{"pauli", p.label()}, {"expectation", sp.values()[i]}});
      }
      result.data = {{"n", sp.n()}, {"spectrum", rows}};
      result.default_format = "csv";
    };
  });

  // rom / extent --------------------------------------------------------------
  StateArgs rom_state;
  auto* rom = app.add_subcommand("rom", "Robustness of magic via linear programming (n <= 3)");
  add_state_options(rom, rom_state);
  rom->callback([&] {
    action = [&] {
      const auto s = resolve_state(rom_state);
      const auto d = magic::robustness_of_magic(s);
      result.data = d.to_json();
      result.data["log2"] = std::log2(d.objective);
      result.text = fmt(d.objective) + "\n";
    };
  });
  StateArgs ext_state;
  auto* extent = app.add_subcommand("extent", "Stabilizer extent with dual certificate (n <= 3)");
  add_state_options(extent, ext_state);
  extent->callback([&] {
    action = [&] {
      const auto s = resolve_state(ext_state);
      const auto e = magic::stabilizer_extent(s);
      if (!e.converged) throw magic::NumericalError("extent solver did not converge");
      result.data = e.decomposition.to_json();
      result.data["l1_norm"] = e.l1_norm;
      result.data["dual_bound"] = e.dual_bound;
      result.data["certified_gap"] = e.certified_gap();
      result.data["iterations"] = e.iterations;
      result.data["log2"] = std::log2(e.decomposition.objective);
      result.text = fmt(e.decomposition.objective) + "\n";
    };
  });

  // amortize ------------------------------------------------------------------
  UnitaryArgs am_u;
  auto* amortize = app.add_subcommand(
      "amortize", "Variational lower bound on the amortized SRE of a unitary (bits)");
  add_unitary_options(amortize, am_u);
  alpha_opt(amortize);
  optimizer_opts(amortize);
  amortize->callback([&] {
    action = [&] {
      const auto u = resolve_unitary(am_u);
      magic::OptimizerOptions o;
      o.restarts = restarts;
      o.seed = common.seed;
      const auto rep = magic::amortized_sre_lower_bound(u, alpha, ancillas.value_or(u.n()), o);
      result.data = magic::report_to_json(rep, common.wall_time);
      result.data["gate"] = unitary_label(am_u);
      std::cerr << "wall time " << fmt(rep.wall_time_s) << " s\n";
      if (!rep.converged) throw magic::NumericalError("no restart converged");
    };
  });

  // strict --------------------------------------------------------------------
  UnitaryArgs st_u;
  bool allow_large = false;
  auto* strict = app.add_subcommand(
      "strict", "Strict amortized measures over stabilizer inputs (bits; n = 1, or n = 2 for SRE)");
  add_unitary_options(strict, st_u);
  alpha_opt(strict);
  strict->add_flag("--allow-large", allow_large, "Permit the 36720-state enumeration for n = 2");
  strict->callback([&] {
    action = [&] {
      const auto u = resolve_unitary(st_u);
      const auto s = magic::strict_amortized_sre(u, alpha, allow_large);
      result.data = {{"gate", unitary_label(st_u)},
                     {"alpha", alpha},
                     {"strict_sre", s.value},
                     {"maximizer", magic::state_to_json(s.maximizer)}};
      if (u.n() == 1) {
        result.data["strict_log_rom"] = magic::strict_amortized_log_rom(u).value;
        result.data["strict_log_extent"] = magic::strict_amortized_log_extent(u).value;
      }
    };
  });

  // tcount --------------------------------------------------------------------
  UnitaryArgs tc_u;
  auto* tcount = app.add_subcommand(
      "tcount", "T-count lower bounds from the Choi-state SRE and stabilizer nullity (n <= 4)");
  add_unitary_options(tcount, tc_u);
  tcount->callback([&] {
    action = [&] {
      const auto b = magic::tcount_lower_bound(resolve_unitary(tc_u), unitary_label(tc_u));
      result.data = magic::report_to_json(b);
      result.data["note"] = "the amortized-SRE bound may be larger";
    };
  });

  // scan-rz -------------------------------------------------------------------
  int rz_points = 33;
  double rz_max = magic::kPi / 4;
  int rz_ancillas = 1;
  auto* scan_rz = app.add_subcommand(
      "scan-rz", "Amortized and strict magic of R_z(theta) over a theta grid (CSV, bits)");
  scan_rz->add_option("--points", rz_points, "Grid points on [0, theta-max]")->capture_default_str();
  scan_rz->add_option("--theta-max", rz_max, "Largest angle in radians, <= pi/2")
      ->capture_default_str();
  scan_rz->add_option("--ancillas", rz_ancillas, "Ancillas for the optimizer column")
      ->capture_default_str();
  scan_rz->add_option("--restarts", restarts, "Random restarts per angle")->capture_default_str();
  scan_rz->callback([&] {
    action = [&] {
      magic::RzScanOptions o;
      o.ancillas = rz_ancillas;
      o.restarts = restarts;
      o.seed = common.seed;
      const auto rows = magic::scan_rz(magic::linear_grid(0.0, rz_max, rz_points), o);
      std::ostringstream os;
      magic::write_csv(os, rows);
      result.csv = os.str();
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"theta", r.theta},
                       {"amortized_sre_lb", r.amortized_sre_lb},
                       {"strict_sre", r.strict_sre},
                       {"strict_log_rom", r.strict_log_rom},
                       {"strict_log_extent", r.strict_log_extent}});
      }
      result.data = {{"seed", common.seed}, {"rows", arr}};
      result.default_format = "csv";
    };
  });

  // scan-heisenberg -----------------------------------------------------------
  magic::HeisenbergScanOptions hs;
  double t_max = 3.0;
  int t_points = 31;
  bool open_chain = false;
  auto* scan_h = app.add_subcommand(
      "scan-heisenberg", "T-count bounds of disordered Heisenberg evolution exp(-iHt) (CSV)");
  scan_h->add_option("--sites", hs.sites, "Chain length N <= 4")->capture_default_str();
  scan_h->add_option("--delta", hs.delta, "ZZ anisotropy")->capture_default_str();
  scan_h->add_option("--disorder", hs.disorders, "Disorder widths W (fields uniform in [-W, W])")
      ->capture_default_str();
  scan_h->add_option("--t-max", t_max, "Final time")->capture_default_str();
  scan_h->add_option("--t-points", t_points, "Time grid points on [0, t-max]")
      ->capture_default_str();
  scan_h->add_flag("--open", open_chain, "Open instead of periodic boundary");
  scan_h->callback([&] {
    action = [&] {
      hs.times = magic::linear_grid(0.0, t_max, t_points);
      hs.seed = common.seed;
      hs.boundary = open_chain ? magic::Boundary::kOpen : magic::Boundary::kPeriodic;
      const auto rows = magic::scan_heisenberg(hs);
      std::ostringstream os;
      magic::write_csv(os, rows);
      result.csv = os.str();
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"W", r.disorder},
                       {"t", r.t},
                       {"choi_sre", r.choi_sre},
                       {"sre_bound", r.sre_bound},
                       {"nullity_bound", r.nullity_bound},
                       {"seed", r.seed}});
      }
      json onsets = json::object();
      for (double w : hs.disorders) {
        const auto t = magic::advantage_onset(rows, w);
        onsets[fmt(w)] = t ? json(*t) : json(nullptr);
      }
      result.data = {{"sites", hs.sites}, {"delta", hs.delta}, {"rows", arr},
                     {"advantage_onset", onsets}};
      result.default_format = "csv";
    };
  });

  // ccrz ----------------------------------------------------------------------
  int cc_points = 9;
  double cc_min = 2 * magic::kPi / 3;
  double cc_max = 4 * magic::kPi / 3;
  auto* ccrz = app.add_subcommand(
      "ccrz", "T-count bounds of CCR_z(theta) = diag(1, ..., 1, e^{i theta}) (CSV, radians)");
  ccrz->add_option("--points", cc_points, "Grid points")->capture_default_str();
  ccrz->add_option("--theta-min", cc_min, "Smallest angle (radians)")->capture_default_str();
  ccrz->add_option("--theta-max", cc_max, "Largest angle (radians)")->capture_default_str();
  ccrz->callback([&] {
    action = [&] {
      const auto rows = magic::tcount_bound_ccrz(magic::linear_grid(cc_min, cc_max, cc_points));
      std::ostringstream os;
      magic::write_csv(os, rows);
      result.csv = os.str();
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"theta", r.theta},
                       {"choi_sre", r.choi_sre},
                       {"sre_bound", r.sre_bound},
                       {"nullity_bound", r.nullity_bound}});
      }
      result.data = {{"rows", arr}};
      result.default_format = "csv";
    };
  });

  // nonstab-power -------------------------------------------------------------
  UnitaryArgs np_u;
  auto* nsp = app.add_subcommand(
      "nonstab-power", "Average M_alpha of U applied to all stabilizer states (bits, n <= 3)");
  add_unitary_options(nsp, np_u);
  alpha_opt(nsp);
  nsp->callback([&] {
    action = [&] {
      const double v = magic::nonstabilizing_power(resolve_unitary(np_u), alpha);
      result.data = {{"gate", unitary_label(np_u)}, {"alpha", alpha}, {"value", v}};
      result.text = fmt(v) + "\n";
    };
  });

  // enumerate-stab ------------------------------------------------------------
  int es_n = 1;
  bool es_large = false;
  auto* enumerate = app.add_subcommand(
      "enumerate-stab", "Enumerate pure stabilizer states (cached under $MAGIC_STAB_CACHE)");
  enumerate->add_option("--qubits", es_n, "Qubit count 1..4")->capture_default_str();
  enumerate->add_flag("--allow-large", es_large, "Permit n = 4 (36720 states)");
  enumerate->callback([&] {
    action = [&] {
      const auto set = magic::stabilizer_states(es_n, es_large);
      json states = json::array();
      for (const auto& s : set) states.push_back(magic::state_to_json(s));
      result.data = {{"n", es_n}, {"count", set.size()}, {"states", states}};
      result.text = std::to_string(set.size()) + "\n";
      result.default_format = "text";
    };
  });

  // verify --------------------------------------------------------------------
  int trials = 1000;
  bool direct = false;
  auto* verify = app.add_subcommand(
      "verify", "Randomized inequality checks, PSD lemmas and property suites");
  verify->add_option("--trials", trials, "Random states per inequality")->capture_default_str();
  verify->add_flag("--direct", direct, "Also run the 4096-dimensional eigenvalue check");
  bool verify_failed = false;
  verify->callback([&] {
    action = [&] {
      json arr = json::array();
      std::ostringstream text;
      for (const auto& l : run_verification(common.seed, trials, direct)) {
        arr.push_back({{"check", l.name}, {"passed", l.passed}, {"detail", l.detail}});
        text << (l.passed ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
        verify_failed = verify_failed || !l.passed;
      }
      result.data = {{"seed", common.seed}, {"checks", arr}, {"passed", !verify_failed}};
      result.text = text.str();
      result.default_format = "text";
    };
  });

  // dagger-compare ------------------------------------------------------------
  UnitaryArgs dc_u;
  auto* dagger = app.add_subcommand(
      "dagger-compare", "Report amortized-SRE lower bounds for U and U^dagger (no assertion)");
  add_unitary_options(dagger, dc_u);
  optimizer_opts(dagger);
  dagger->callback([&] {
    action = [&] {
      const auto u = resolve_unitary(dc_u);
      magic::OptimizerOptions o;
      o.restarts = restarts;
      o.seed = common.seed;
      result.data = dagger_compare(u, ancillas.value_or(u.n()), o);
      result.data["gate"] = unitary_label(dc_u);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (common.seed == 0) common.seed = magic::entropy_seed();
  std::cerr << "seed " << common.seed << "\n";
  magic::set_thread_count(common.threads);
  try {
    action();
    emit(result, common);
  } catch (const magic::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const magic::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return verify_failed ? 1 : 0;
}
