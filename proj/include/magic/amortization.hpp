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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "magic/circuit.hpp"
#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/random.hpp"
#include "magic/sre.hpp"
#include "magic/stabilizer.hpp"
#include "magic/state.hpp"

namespace magic {

/// M_alpha((U (x) I_{2^m})|phi>) - M_alpha(|phi>) for phi on n + m qubits.
inline double sre_generation_gap(const UnitaryMatrix& u, int m, const StateVector& phi,
                                 double alpha) {
  if (m < 0 || phi.n() != u.n() + m) {
    throw DimensionError("input state must have n + m qubits");
  }
  return renyi_entropy(u.apply_with_ancillas(phi), alpha).value -
         renyi_entropy(phi, alpha).value;
}

struct StrictSreResult {
  double value = 0.0;
  StateVector maximizer;
  std::size_t maximizer_index = 0;
};

/// max over |phi> in `inputs` of M_alpha((U (x) I)|phi>); the first maximum in
/// enumeration order wins ties.
inline StrictSreResult max_sre_over_inputs(const UnitaryMatrix& u, double alpha,
                                           const StabilizerSet& inputs) {
  if (inputs.n() < u.n()) throw DimensionError("stabilizer inputs smaller than the unitary");
  std::vector<double> values(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    values[i] = renyi_entropy(u.apply_with_ancillas(inputs[i]), alpha).value;
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best] + 1e-12) best = i;
  }
  return {values[best], inputs[best], best};
}

/// Strict amortized SRE, maximized over STAB_{2n}. n = 2 needs the 36720-state
/// enumeration and must be enabled with allow_large.
inline StrictSreResult strict_amortized_sre(const UnitaryMatrix& u, double alpha,
                                            bool allow_large = false) {
  if (u.n() != 1 && u.n() != 2) {
    throw DimensionError("strict amortized SRE supports one- and two-qubit unitaries");
  }
  return max_sre_over_inputs(u, alpha, stabilizer_states(2 * u.n(), allow_large));
}

namespace detail {

// out = sum_P w_P P chi, with w indexed like a PauliSpectrum. Row a of the
// weights is folded into h_a(b) = sum_z w_{a,z} i^{|a&z|} (-1)^{z.b} by a
// Walsh-Hadamard transform, then (P chi)(b ^ a) picks up h_a(b) chi(b).
inline CVector pauli_weighted_sum(const CVector& chi, int n, const std::vector<double>& w) {
  const std::uint64_t d = dim_of(n);
  CVector out = CVector::Zero(chi.size());
  std::vector<Complex> h(d);
  for (std::uint64_t a = 0; a < d; ++a) {
    bool any = false;
    for (std::uint64_t z = 0; z < d; ++z) {
      const double wz = w[(a << n) | z];
      h[z] = wz == 0.0 ? Complex(0.0) : i_pow(popcount(a & z)) * wz;
      any = any || wz != 0.0;
    }
    if (!any) continue;
    walsh_hadamard(h);
    for (std::uint64_t b = 0; b < d; ++b) {
      out[static_cast<Eigen::Index>(b ^ a)] += h[b] * chi[static_cast<Eigen::Index>(b)];
    }
  }
  return out;
}

struct SreWithGradient {
  double value = 0.0;
  CVector gradient;  // 2 dM/d(conj chi)
};

inline SreWithGradient sre_with_gradient(const CVector& chi, int n, double alpha) {
  const StateVector state(n, chi);
  const auto spec = full_spectrum(state);
  const auto sre = renyi_entropy(spec, alpha);
  const double scale = static_cast<double>(dim_of(n));
  std::vector<double> w(spec.size());
  if (alpha == 1.0) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double e = spec[i];
      if (std::abs(e) <= kZeroExpectation) continue;
      const double xi = e * e / scale;
      w[i] = -(2.0 * e / scale) * (std::log2(xi) + 1.0 / std::log(2.0));
    }
  } else {
    const double pre = 2.0 * alpha / ((1.0 - alpha) * std::log(2.0) * sre.r_alpha);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double e = spec[i];
      if (alpha == 2.0) {
        w[i] = pre * e * e * e;
      } else if (e != 0.0) {
        w[i] = pre * std::copysign(std::pow(std::abs(e), 2.0 * alpha - 1.0), e);
      }
    }
  }
  return {sre.value, 2.0 * pauli_weighted_sum(chi, n, w)};
}

}  // namespace detail

/// f(phi) = M_alpha((U (x) I)phi) - M_alpha(phi) and its ambient gradient
/// g = 2 df/d(conj phi), so that df = Re(g^H dphi).
class GenerationGapObjective {
 public:
  GenerationGapObjective(UnitaryMatrix u, int m, double alpha)
      : u_(std::move(u)), u_adjoint_(u_.adjoint()), m_(m), alpha_(alpha), total_(u_.n() + m) {
    if (m < 0) throw DimensionError("ancilla count must be non-negative");
    if (!(alpha > 0.0)) throw DimensionError("gradient ascent needs alpha > 0");
  }

  int qubits() const { return total_; }
  int ancillas() const { return m_; }

  double value(const CVector& phi) const {
    const StateVector s(total_, phi);
    return renyi_entropy(u_.apply_with_ancillas(s), alpha_).value -
           renyi_entropy(s, alpha_).value;
  }

  double value_and_gradient(const CVector& phi, CVector& grad) const {
    CVector after, before;
    const double v = term_gradients(phi, after, before);
    grad = after - before;
    return v;
  }

  /// Ambient gradients of the two entropy terms, the first pulled back
  /// through U; their difference is the objective's gradient.
  double term_gradients(const CVector& phi, CVector& after_grad, CVector& before_grad) const {
    const StateVector s(total_, phi);
    const CVector out = u_.apply_with_ancillas(s).amplitudes();
    const auto after = detail::sre_with_gradient(out, total_, alpha_);
    auto before = detail::sre_with_gradient(phi, total_, alpha_);
    after_grad = u_adjoint_.apply_with_ancillas(after.gradient);
    before_grad = std::move(before.gradient);
    return after.value - before.value;
  }

 private:
  UnitaryMatrix u_;
  UnitaryMatrix u_adjoint_;
  int m_;
  double alpha_;
  int total_;
};

struct OptimizerOptions {
  int restarts = 20;
  std::uint64_t seed = 1;
  int max_iterations = 10'000;
  double gradient_tolerance = 1e-8;
  double fd_step = 1e-5;
  double fd_tolerance = 1e-4;
  std::vector<StateVector> warm_starts;  // extra starting points, run first
};

enum class Termination { kGradientTolerance, kPrecisionFloor, kIterationLimit };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kGradientTolerance:
      return "gradient_tolerance";
    case Termination::kPrecisionFloor:
      return "precision_floor";
    default:
      return "iteration_limit";
  }
}

struct OptimizerReport {
  double best_value = 0.0;
  StateVector best_state;
  int restarts_run = 0;
  long iterations = 0;             // summed over restarts
  double final_gradient_norm = 0.0;  // of the best restart
  // Some restart stopped at a stationary point: the tangent gradient fell
  // below tolerance or no ascent step was resolvable in double precision.
  bool converged = false;
  Termination termination = Termination::kIterationLimit;
  double gradient_check_error = 0.0;  // worst relative FD mismatch on first iterates
  std::uint64_t seed = 0;
  int ancillas = 0;
  double alpha = 2.0;
  double wall_time_s = 0.0;
};

namespace detail {

inline CVector project_tangent(const CVector& phi, const CVector& g) {
  return g - phi.dot(g).real() * phi;
}

inline CVector retract(const CVector& v) { return v / v.norm(); }

struct RestartOutcome {
  double value = 0.0;
  CVector state;
  long iterations = 0;
  double gradient_norm = 0.0;
  Termination termination = Termination::kIterationLimit;
  double fd_error = 0.0;
};

// Relative error of the directional derivative against a central difference.
// The scale includes each entropy term separately so that an objective that
// cancels to zero (e.g. U = I) is not judged against round-off alone.
inline double check_gradient(const GenerationGapObjective& f, const CVector& phi,
                             const CVector& grad, Rng& rng, double h) {
  CVector d(phi.size());
  for (auto& v : d) {
    const double re = rng.normal();
    v = Complex(re, rng.normal());
  }
  d = project_tangent(phi, d);
  d /= d.norm();
  const double analytic = grad.dot(d).real();
  const double numeric =
      (f.value(retract(phi + h * d)) - f.value(retract(phi - h * d))) / (2.0 * h);
  CVector after, before;
  f.term_gradients(phi, after, before);
  const double terms = std::abs(after.dot(d).real()) + std::abs(before.dot(d).real());
  const double scale = std::max({std::abs(analytic), std::abs(numeric), terms, 1e-6});
  return std::abs(analytic - numeric) / scale;
}

inline RestartOutcome ascend(const GenerationGapObjective& f, CVector phi,
                             const OptimizerOptions& opt, Rng& rng, bool check_first = true) {
  RestartOutcome out;
  CVector grad;
  double value = f.value_and_gradient(phi, grad);
  if (check_first) out.fd_error = check_gradient(f, phi, grad, rng, opt.fd_step);
  CVector tangent = project_tangent(phi, grad);
  double step = 0.1;
  CVector prev_phi, prev_tangent;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double gnorm = tangent.norm();
    out.gradient_norm = gnorm;
    if (gnorm < opt.gradient_tolerance) {
      out.termination = Termination::kGradientTolerance;
      break;
    }
    if (it > 0) {
      // Barzilai-Borwein trial step from the last displacement.
      const CVector s = phi - prev_phi;
      const CVector y = tangent - prev_tangent;
      const double sy = s.dot(y).real();
      step = sy < 0.0 ? std::clamp(s.squaredNorm() / -sy, 1e-6, 1e3) : 1.0;
    }
    bool accepted = false;
    CVector candidate;
    double cand_value = value;
    for (int bt = 0; bt < 60; ++bt) {
      candidate = retract(phi + step * tangent);
      cand_value = f.value(candidate);
      if (cand_value > value && cand_value >= value + 1e-4 * step * gnorm * gnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++out.iterations;
    if (!accepted) {  // no ascent left at working precision
      out.termination = Termination::kPrecisionFloor;
      break;
    }
    prev_phi = phi;
    prev_tangent = tangent;
    phi = candidate;
    value = f.value_and_gradient(phi, grad);
    tangent = project_tangent(phi, grad);
    out.gradient_norm = tangent.norm();
  }
  out.value = value;
  out.state = std::move(phi);
  return out;
}

}  // namespace detail

/// Variational lower bound on the amortized SRE of U with m ancillas:
/// Riemannian gradient ascent on the unit sphere of H_{n+m} from Haar-random
/// starts, keeping the best value over restarts.
inline OptimizerReport amortized_sre_lower_bound(const UnitaryMatrix& u, double alpha, int m,
                                                 const OptimizerOptions& opt = {}) {
  if (u.n() + m > 4) throw DimensionError("optimizer supports n + m <= 4");
  if (m < 0) throw DimensionError("ancilla count must be non-negative");
  if (opt.restarts < 1) throw DimensionError("need at least one restart");
  const auto start = std::chrono::steady_clock::now();
  const GenerationGapObjective f(u, m, alpha);
  const int total = u.n() + m;
  for (const auto& w : opt.warm_starts) {
    if (w.n() != total) throw DimensionError("warm start has the wrong qubit count");
  }
  const std::size_t runs = opt.warm_starts.size() + static_cast<std::size_t>(opt.restarts);
  std::vector<detail::RestartOutcome> outcomes(runs);
  parallel_for(runs, [&](std::size_t r) {
    Rng rng(derive_seed(opt.seed, r));
    CVector phi = r < opt.warm_starts.size() ? opt.warm_starts[r].amplitudes()
                                             : StateVector::haar_random(total, rng).amplitudes();
    // Warm starts are typically near-stationary, where a relative FD error is
    // ill-conditioned; the random restarts validate the same gradient.
    outcomes[r] = detail::ascend(f, std::move(phi), opt, rng, r >= opt.warm_starts.size());
  });
  OptimizerReport rep;
  rep.seed = opt.seed;
  rep.ancillas = m;
  rep.alpha = alpha;
  rep.restarts_run = static_cast<int>(runs);
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    rep.iterations += outcomes[r].iterations;
    rep.gradient_check_error = std::max(rep.gradient_check_error, outcomes[r].fd_error);
    if (outcomes[r].value > outcomes[best].value) best = r;
  }
  if (rep.gradient_check_error > opt.fd_tolerance) {
    throw NumericalError("analytic gradient disagrees with finite differences (relative error " +
                         std::to_string(rep.gradient_check_error) + ")");
  }
  rep.best_value = outcomes[best].value;
  rep.best_state = StateVector::normalized(total, outcomes[best].state);
  rep.final_gradient_norm = outcomes[best].gradient_norm;
  rep.termination = outcomes[best].termination;
  rep.converged = std::any_of(outcomes.begin(), outcomes.end(), [](const auto& o) {
    return o.termination != Termination::kIterationLimit;
  });
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

enum class InequalityGate { kT, kCcz };

struct InequalityReport {
  InequalityGate gate = InequalityGate::kT;
  int trials = 0;
  double min_value = 0.0;
  int min_trial_ancillas = 0;
  double equality_case_value = 0.0;  // at |+> (T) or |+++> (CCZ)
  bool passed = false;
};

/// a R2((G (x) I)psi) - b R2(psi) with (a, b) = (4, 3) for T, (32, 11) for CCZ.
inline double r2_combination(InequalityGate gate, const StateVector& psi) {
  const bool t = gate == InequalityGate::kT;
  const UnitaryMatrix g = build_gate(t ? "t" : "ccz", {});
  const double a = t ? 4.0 : 32.0;
  const double b = t ? 3.0 : 11.0;
  return a * r2_sum(g.apply_with_ancillas(psi)) - b * r2_sum(psi);
}

/// Evaluates the R2 inequality behind the amortized T / CCZ values on Haar
/// random states with m in {0, 1, 2} (T) or {0, 1} (CCZ) ancillas.
inline InequalityReport verify_r2_inequalities(InequalityGate gate, int trials,
                                               std::uint64_t seed) {
  if (trials < 1) throw DimensionError("need at least one trial");
  const bool t = gate == InequalityGate::kT;
  const int base = t ? 1 : 3;
  const int m_choices = t ? 3 : 2;
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const int m = static_cast<int>(i % static_cast<std::size_t>(m_choices));
    values[i] = r2_combination(gate, StateVector::haar_random(base + m, rng));
  });
  InequalityReport rep;
  rep.gate = gate;
  rep.trials = trials;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[arg]) arg = i;
  }
  rep.min_value = values[arg];
  rep.min_trial_ancillas = static_cast<int>(arg % static_cast<std::size_t>(m_choices));
  rep.equality_case_value = r2_combination(gate, StateVector::plus(base));
  rep.passed = rep.min_value >= -1e-9 && std::abs(rep.equality_case_value) <= 1e-9;
  return rep;
}

}  // namespace magic
