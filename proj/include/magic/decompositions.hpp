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
#include <memory>
#include <nlohmann/json.hpp>
#include <vector>

#include "magic/basis_pursuit.hpp"
#include "magic/core.hpp"
#include "magic/pauli.hpp"
#include "magic/simplex.hpp"
#include "magic/stabilizer.hpp"
#include "magic/state.hpp"

namespace magic {

/// Convex decomposition of a state over a stabilizer basis. `coefficients`
/// is real for robustness of magic and complex for stabilizer extent.
struct Decomposition {
  int basis_n = 0;
  CVector coefficients;
  double objective = 0.0;
  double residual = 0.0;

  std::vector<std::size_t> support(double tol = 1e-12) const {
    std::vector<std::size_t> idx;
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
      if (std::abs(coefficients[i]) > tol) idx.push_back(static_cast<std::size_t>(i));
    }
    return idx;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["objective"] = objective;
    std::vector<double> re;
    std::vector<double> im;
    const auto idx = support();
    for (auto i : idx) {
      re.push_back(coefficients[static_cast<Eigen::Index>(i)].real());
      im.push_back(coefficients[static_cast<Eigen::Index>(i)].imag());
    }
    j["basis_indices"] = idx;
    j["coefficients_re"] = re;
    j["coefficients_im"] = im;
    j["residual"] = residual;
    return j;
  }
};

/// Robustness-of-magic LP for a fixed stabilizer basis. Constraints are the
/// 4^n Pauli coefficients:  sum_i q_i <s_i|P|s_i> = <psi|P|psi>.
class RobustnessSolver {
 public:
  explicit RobustnessSolver(const StabilizerSet& basis) : n_(basis.n()) {
    const auto rows = static_cast<Eigen::Index>(dim_of(2 * n_));
    const auto cols = static_cast<Eigen::Index>(basis.size());
    a_.resize(rows, 2 * cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
      const auto spec = full_spectrum(basis[static_cast<std::size_t>(i)]);
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double v = std::round(spec[static_cast<std::size_t>(r)]);
        a_(r, i) = v;
        a_(r, cols + i) = -v;
      }
    }
    cost_ = Eigen::VectorXd::Ones(2 * cols);
  }

  int n() const { return n_; }

  Decomposition solve(const StateVector& state) const {
    if (state.n() != n_) throw DimensionError("robustness: state and basis sizes differ");
    const auto spec = full_spectrum(state);
    Eigen::VectorXd b(static_cast<Eigen::Index>(spec.size()));
    for (std::size_t r = 0; r < spec.size(); ++r) b[static_cast<Eigen::Index>(r)] = spec[r];
    const auto res = lp::solve(a_, b, cost_);
    switch (res.status) {
      case lp::Status::kOptimal: break;
      case lp::Status::kInfeasible:
        throw NumericalError("robustness LP infeasible; stabilizer basis is incomplete");
      case lp::Status::kUnbounded: throw NumericalError("robustness LP unbounded");
      case lp::Status::kIterationLimit: throw NumericalError("robustness LP did not converge");
    }
    const Eigen::Index cols = a_.cols() / 2;
    Eigen::VectorXd q = res.x.head(cols) - res.x.tail(cols);
    Decomposition d;
    d.basis_n = n_;
    d.coefficients = q.cast<Complex>();
    d.objective = q.cwiseAbs().sum();
    d.residual = (a_.leftCols(cols) * q - b).cwiseAbs().maxCoeff();
    return d;
  }

 private:
  int n_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd cost_;
};

/// Outcome of a stabilizer-extent solve: objective = xi = (min ||c||_1)^2.
struct ExtentDecomposition {
  Decomposition decomposition;
  double l1_norm = 0.0;
  double dual_bound = 0.0;  // certified lower bound on min ||c||_1
  long iterations = 0;
  bool converged = false;

  double certified_gap() const { return l1_norm - dual_bound; }
};

class ExtentSolver {
 public:
  explicit ExtentSolver(const StabilizerSet& basis, bp::Options opt = {})
      : n_(basis.n()), solver_(columns(basis), opt) {}

  int n() const { return n_; }

  ExtentDecomposition solve(const StateVector& state) const {
    if (state.n() != n_) throw DimensionError("extent: state and basis sizes differ");
    const auto res = solver_.solve(state.amplitudes());
    if (!res.converged) throw NumericalError("stabilizer extent solver did not converge");
    ExtentDecomposition out;
    out.decomposition.basis_n = n_;
    out.decomposition.coefficients = res.coefficients;
    out.decomposition.objective = res.l1_norm * res.l1_norm;
    out.decomposition.residual = res.residual;
    out.l1_norm = res.l1_norm;
    out.dual_bound = res.dual_bound;
    out.iterations = res.iterations;
    out.converged = res.converged;
    return out;
  }

  const CMatrix& matrix() const { return solver_.matrix(); }

 private:
  static CMatrix columns(const StabilizerSet& basis) {
    CMatrix a(static_cast<Eigen::Index>(dim_of(basis.n())),
              static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      a.col(static_cast<Eigen::Index>(j)) = basis[j].amplitudes();
    }
    return a;
  }

  int n_;
  bp::Solver solver_;
};

namespace detail {
inline void require_rom_size(int n) {
  if (n < 1 || n > 3) throw DimensionError("decompositions support 1..3 qubits");
}
}  // namespace detail

/// Robustness of magic R (not its log) with an optimal decomposition.
inline Decomposition robustness_of_magic(const StateVector& state, const StabilizerSet& basis) {
  detail::require_rom_size(state.n());
  return RobustnessSolver(basis).solve(state);
}

inline ExtentDecomposition stabilizer_extent(const StateVector& state,
                                             const StabilizerSet& basis) {
  detail::require_rom_size(state.n());
  return ExtentSolver(basis).solve(state);
}

inline Decomposition robustness_of_magic(const StateVector& state) {
  detail::require_rom_size(state.n());
  return robustness_of_magic(state, stabilizer_states(state.n()));
}

inline ExtentDecomposition stabilizer_extent(const StateVector& state) {
  detail::require_rom_size(state.n());
  return stabilizer_extent(state, stabilizer_states(state.n()));
}

struct StrictAmortizedResult {
  double value = 0.0;            // log2 of the inner measure at the maximizer
  std::size_t maximizer = 0;     // index into the 2n-qubit stabilizer set
};

namespace detail {
template <class Measure>
StrictAmortizedResult strict_amortized_max(const UnitaryMatrix& u, const StabilizerSet& inputs,
                                           Measure&& measure) {
  std::vector<double> values(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    values[i] = std::log2(measure(u.apply_with_ancillas(inputs[i])));
  });
  StrictAmortizedResult best{values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best.value) best = {values[i], i};
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

inline void require_single_qubit(const UnitaryMatrix& u) {
  if (u.n() != 1) {
    throw DimensionError("strict amortized robustness/extent support single-qubit unitaries");
  }
}
}  // namespace detail

/// max over |phi> in STAB_2 of log2 R((U (x) I)|phi>), for single-qubit U.
inline StrictAmortizedResult strict_amortized_log_rom(const UnitaryMatrix& u,
                                                      const StabilizerSet& stab2,
                                                      const RobustnessSolver& solver) {
  detail::require_single_qubit(u);
  return detail::strict_amortized_max(
      u, stab2, [&](const StateVector& s) { return solver.solve(s).objective; });
}

inline StrictAmortizedResult strict_amortized_log_rom(const UnitaryMatrix& u) {
  detail::require_single_qubit(u);
  const auto stab2 = stabilizer_states(2);
  return strict_amortized_log_rom(u, stab2, RobustnessSolver(stab2));
}

/// max over |phi> in STAB_2 of log2 xi((U (x) I)|phi>), for single-qubit U.
inline StrictAmortizedResult strict_amortized_log_extent(const UnitaryMatrix& u,
                                                         const StabilizerSet& stab2,
                                                         const ExtentSolver& solver) {
  detail::require_single_qubit(u);
  return detail::strict_amortized_max(
      u, stab2, [&](const StateVector& s) { return solver.solve(s).decomposition.objective; });
}

inline StrictAmortizedResult strict_amortized_log_extent(const UnitaryMatrix& u) {
  detail::require_single_qubit(u);
  const auto stab2 = stabilizer_states(2);
  return strict_amortized_log_extent(u, stab2, ExtentSolver(stab2));
}

}  // namespace magic
