// Copyright 2026 The pgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgate/gate_model.hpp"

#include <algorithm>
#include <cmath>

#include "pgate/errors.hpp"
#include "pgate/optim.hpp"
#include "pgate/units.hpp"

namespace pgate::gate {

using pgate::fail_numerical;
using pgate::fail_validation;
using pgate::require;

GateParams GateParams::from_physical(const PhysicalEfficiencies& phys,
                                     double v_control, double v_target) {
  GateParams p;
  p.eta = {phys.eta_sr, phys.srt_rb_sq, phys.eta_f, phys.eta_f * phys.r_sq};
  p.v_control = v_control;
  p.v_target = v_target;
  p.physical = phys;
  p.validate();
  return p;
}

void GateParams::validate() const {
  for (double e : eta)
    require(e >= 0.0 && e <= 1.0, "invalid_params",
            "efficiencies must lie in [0, 1]");
  require(v_control >= 0.0 && v_control <= 1.0 && v_target >= 0.0 &&
              v_target <= 1.0,
          "invalid_params", "visibilities must lie in [0, 1]");
  if (physical) {
    const auto& ph = *physical;
    const auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1.0});
    };
    require(close(eta[0], ph.eta_sr) && close(eta[1], ph.srt_rb_sq) &&
                close(eta[2], ph.eta_f) && close(eta[3], ph.eta_f * ph.r_sq),
            "invalid_params",
            "efficiencies disagree with their physical decomposition");
  }
}

Eigen::Vector4cd shot_map(const GateParams& params, double beta_c,
                          double beta_t) {
  const auto& e = params.eta;
  return {cxd(std::sqrt(e[0]), 0.0),
          -std::polar(std::sqrt(e[1]), beta_t),
          std::polar(std::sqrt(e[2]), beta_c),
          std::polar(std::sqrt(e[3]), beta_c + beta_t)};
}

void ReducedProcessMatrix::validate() const {
  if ((xi - xi.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    fail_numerical("not_symmetric", "reduced process matrix is not symmetric");
  for (int i = 0; i < 4; ++i)
    if (!(xi(i, i) > 0.0))
      fail_numerical("bad_diagonal",
                     "reduced process matrix needs a positive diagonal");
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (std::abs(xi(i, k)) > std::sqrt(xi(i, i) * xi(k, k)) + 1e-9)
        fail_numerical("not_cp",
                       "reduced process matrix violates the positivity bound");
}

ReducedProcessMatrix ideal_reduced_process() {
  ReducedProcessMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      out.xi(i, k) = ((i == 1) != (k == 1)) ? -1.0 : 1.0;
  out.postselected = true;
  return out;
}

Eigen::Matrix4d visibility_matrix(double v_control, double v_target) {
  Eigen::Matrix2d c, t;
  c << 1.0, v_control, v_control, 1.0;
  t << 1.0, v_target, v_target, 1.0;
  Eigen::Matrix4d v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      v.block<2, 2>(2 * i, 2 * j) = c(i, j) * t;
  return v;
}

ReducedProcessMatrix model_reduced_process(const GateParams& params) {
  const double eta_bar = params.eta_bar();
  if (!(eta_bar > 0.0))
    fail_validation("zero_efficiency", "all efficiencies vanish");
  const Eigen::Matrix4d v =
      visibility_matrix(params.v_control, params.v_target);
  ReducedProcessMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double sign = ((i == 1) != (k == 1)) ? -1.0 : 1.0;
      out.xi(i, k) =
          sign * v(i, k) * std::sqrt(params.eta[i] * params.eta[k]) / eta_bar;
    }
  out.postselected = true;
  return out;
}

ProcessMatrix chi_from_reduced(const ReducedProcessMatrix& xi) {
  static const BasisPtr units =
      std::make_shared<const OperatorBasis>(matrix_unit_basis(4));
  ProcessMatrix chi;
  chi.basis = units;
  chi.postselected = xi.postselected;
  chi.chi = Mat::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) chi.chi(4 * i + i, 4 * k + k) = xi.xi(i, k);
  return chi;
}

std::pair<ReducedProcessMatrix, double> reduced_from_chi(
    const ProcessMatrix& chi) {
  require(chi.basis && chi.basis->name() == "unit4", "basis_mismatch",
          "reduced extraction expects the matrix-unit basis");
  ReducedProcessMatrix xi;
  xi.postselected = chi.postselected;
  Mat rest = chi.chi;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      xi.xi(i, k) = chi.chi(4 * i + i, 4 * k + k).real();
      rest(4 * i + i, 4 * k + k) = 0.0;
    }
  const double trace = std::abs(chi.chi.trace().real());
  const double neglected =
      trace > 0.0 ? rest.norm() / trace : rest.norm();
  return {xi, neglected};
}

ReducedFidelities fidelities_from_reduced(const ReducedProcessMatrix& xi) {
  require(xi.postselected, "not_postselected",
          "fidelities are defined on the postselected matrix");
  const Eigen::Matrix4d id = ideal_reduced_process().xi;
  ReducedFidelities out;
  out.process = (id * xi.xi).trace() / 16.0;
  // Bell route: overlap of the rotated output for the double-diagonal input
  // with the target Bell state, written out entry by entry.
  double bell = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double sign = ((i == 1) != (k == 1)) ? -1.0 : 1.0;
      bell += sign * xi.xi(i, k);
    }
  out.bell = bell / 16.0;
  if (std::abs(out.bell - out.process) > 1e-12)
    fail_numerical("identity_violation",
                   "Bell and process fidelities should coincide");
  return out;
}

VisibilityFit fit_visibilities(const ReducedProcessMatrix& measured,
                               const std::array<double, 4>& etas) {
  for (double e : etas)
    require(e > 0.0, "invalid_params", "efficiencies must be positive");
  GateParams base;
  base.eta = etas;

  const auto cost = [&](const Eigen::VectorXd& x) {
    GateParams p = base;
    p.v_control = x(0);
    p.v_target = x(1);
    const Eigen::Matrix4d model = [&] {
      // Evaluate the model without the [0,1] clamp so the optimizer sees a
      // smooth landscape; the result is projected afterwards.
      const double eta_bar = p.eta_bar();
      const Eigen::Matrix4d v = visibility_matrix(x(0), x(1));
      Eigen::Matrix4d m;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
          const double sign = ((i == 1) != (k == 1)) ? -1.0 : 1.0;
          m(i, k) = sign * v(i, k) * std::sqrt(etas[i] * etas[k]) / eta_bar;
        }
      return m;
    }();
    return (model - measured.xi).squaredNorm();
  };

  Eigen::VectorXd x0(2), step(2);
  x0 << 0.8, 0.8;
  step << 0.2, 0.2;
  const auto res = optim::nelder_mead(cost, x0, step);
  if (!res.converged)
    fail_numerical("non_convergence", "visibility fit did not converge");

  VisibilityFit fit;
  fit.v_control = std::clamp(res.x(0), 0.0, 1.0);
  fit.v_target = std::clamp(res.x(1), 0.0, 1.0);

  // Errors from the curvature, scaled by the residual variance.
  const Eigen::VectorXd raw = optim::chisq_parameter_errors(cost, res.x);
  const double dof = 16.0 - 2.0;
  const double sigma_sq = res.cost / dof;
  fit.err_v_control = raw(0) * std::sqrt(sigma_sq);
  fit.err_v_target = raw(1) * std::sqrt(sigma_sq);
  return fit;
}

std::array<std::vector<Pol>, 4> truth_basis_states(TruthBasis basis) {
  if (basis == TruthBasis::cphase)
    return {std::vector<Pol>{Pol::H, Pol::H}, {Pol::H, Pol::V},
            {Pol::V, Pol::H}, {Pol::V, Pol::V}};
  return {std::vector<Pol>{Pol::H, Pol::D}, {Pol::H, Pol::A},
          {Pol::V, Pol::D}, {Pol::V, Pol::A}};
}

int truth_ideal_output(TruthBasis basis, int input_row) {
  if (basis == TruthBasis::cphase) return input_row;
  // Control H flips the target between D and A.
  switch (input_row) {
    case 0: return 1;
    case 1: return 0;
    default: return input_row;
  }
}

double TruthTable::average_fidelity() const {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += p(i, truth_ideal_output(basis, i));
  return acc / 4.0;
}

TruthTable truth_table(const ProcessMatrix& chi, TruthBasis basis) {
  TruthTable out;
  out.basis = basis;
  const auto states = truth_basis_states(basis);
  for (int i = 0; i < 4; ++i) {
    const Ket in = polarization_ket(states[i]);
    const Mat rho_out = apply_process(chi, in.amplitudes * in.amplitudes.adjoint());
    const double norm = rho_out.trace().real();
    require(norm > 0.0, "zero_trace", "no surviving population for input");
    for (int j = 0; j < 4; ++j) {
      const Ket outk = polarization_ket(states[j]);
      out.p(i, j) =
          (outk.amplitudes.adjoint() * rho_out * outk.amplitudes)(0, 0).real() /
          norm;
    }
  }
  return out;
}

TruthTable truth_table_from_counts(const CountsTable& counts,
                                   TruthBasis basis) {
  TruthTable out;
  out.basis = basis;
  const auto states = truth_basis_states(basis);
  // The analysis setting matching the basis: Z on the control, Z or X on the
  // target; outcome '+' means (H or D), '-' means (V or A).
  const std::string setting = basis == TruthBasis::cphase ? "ZZ" : "ZX";
  const auto outcome_col = [&](const std::string& outcome) {
    const int c = outcome[0] == '+' ? 0 : 1;
    const int t = outcome[1] == '+' ? 0 : 1;
    return 2 * c + t;
  };
  for (int i = 0; i < 4; ++i) {
    const std::string input = pol_string(states[i]);
    const CountsCell* cell = counts.find(input, setting);
    require(cell != nullptr, "missing_input",
            "counts lack truth-table input " + input);
    const double total = static_cast<double>(cell->total());
    require(total > 0.0, "empty_counts", "no events for input " + input);
    for (const auto& [outcome, c] : cell->counts)
      out.p(i, outcome_col(outcome)) += static_cast<double>(c) / total;
  }
  return out;
}

double sample_phase(PhaseNoiseLaw law, double visibility, RandomStream& rng) {
  require(visibility > 0.0 || law == PhaseNoiseLaw::two_point,
          "invalid_params", "gaussian phase noise needs visibility > 0");
  require(visibility <= 1.0, "invalid_params", "visibility above 1");
  switch (law) {
    case PhaseNoiseLaw::gaussian: {
      if (visibility >= 1.0) return 0.0;
      const double sigma = std::sqrt(-2.0 * std::log(visibility));
      return sigma * rng.normal();
    }
    case PhaseNoiseLaw::two_point: {
      const double b = std::acos(std::clamp(visibility, 0.0, 1.0));
      return rng.bernoulli(0.5) ? b : -b;
    }
  }
  fail_validation("invalid_params", "unknown phase-noise law");
}

BellPrediction bell_prediction(const GateParams& params) {
  const ReducedProcessMatrix xi = model_reduced_process(params);
  // Postselected output for the double-diagonal input, in the basis
  // (HH, HV, VH, VV): rho_ik = xi_ik / 4.
  const Eigen::Matrix4cd rho = xi.xi.cast<cxd>() / 4.0;
  // Rotate the target qubit with D -> V, A -> H.
  Eigen::Matrix2cd w;
  const double s = 1.0 / std::sqrt(2.0);
  w << s, -s, s, s;
  Eigen::Matrix4cd iw = Eigen::Matrix4cd::Zero();
  iw.block<2, 2>(0, 0) = w;
  iw.block<2, 2>(2, 2) = w;
  const Eigen::Matrix4cd rot = iw * rho * iw.adjoint();
  BellPrediction out;
  out.p_h = rot(0, 0).real();
  out.p_v = rot(3, 3).real();
  out.coherence = 2.0 * rot(0, 3).real();
  return out;
}

}  // namespace pgate::gate
