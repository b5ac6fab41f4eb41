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

#pragma once

#include <array>
#include <optional>

#include "pgate/rng.hpp"
#include "pgate/tomography.hpp"

namespace pgate::gate {

// ---------------------------------------------------------------------------
// Phenomenological gate channel
// ---------------------------------------------------------------------------
// Each shot acts diagonally in the basis (HH, HV, VH, VV):
//   diag(sqrt(e1), -e^{i bt} sqrt(e2), e^{i bc} sqrt(e3),
//        e^{i(bc+bt)} sqrt(e4)),
// with single-qubit phases bc, bt fluctuating shot to shot around zero mean
// and visibilities V = mean(e^{i b}).

// Per-rail loss budget: the control photon is either stored and retrieved
// (eta_sr) or takes the delay fiber (eta_f); the target photon either
// reflects off the blockaded cavity or off the cavity under EIT. Only the
// product of the blocked reflectivity and the storage-while-reflecting
// efficiency is observable; splitting it assuming the storage efficiency is
// unchanged is a labeled assumption used by the multi-target model.
struct PhysicalEfficiencies {
  double eta_sr = 1.0;      // storage + retrieval
  double eta_f = 1.0;       // delay fiber transmission
  double r_sq = 1.0;        // |R|^2, reflectivity under EIT
  double srt_rb_sq = 1.0;   // eta_sr,t * |R_b|^2, only the product is known

  double naive_rb_sq() const { return srt_rb_sq / eta_sr; }
};

struct GateParams {
  // CPHASE-basis efficiencies (HH, HV, VH, VV).
  std::array<double, 4> eta = {1.0, 1.0, 1.0, 1.0};
  double v_control = 1.0;
  double v_target = 1.0;
  std::optional<PhysicalEfficiencies> physical;

  static GateParams from_physical(const PhysicalEfficiencies& phys,
                                  double v_control, double v_target);
  double eta_bar() const {
    return 0.25 * (eta[0] + eta[1] + eta[2] + eta[3]);
  }
  void validate() const;
};

// The diagonal of the per-shot amplitude map for given phase draws.
Eigen::Vector4cd shot_map(const GateParams& params, double beta_c,
                          double beta_t);

// ---------------------------------------------------------------------------
// Reduced process matrix
// ---------------------------------------------------------------------------
// Because the shot map is diagonal, only the 16 chi elements with paired
// indices survive; they form a real symmetric 4x4 matrix.

struct ReducedProcessMatrix {
  Eigen::Matrix4d xi = Eigen::Matrix4d::Zero();
  bool postselected = false;

  // Symmetric within 1e-9, positive diagonal, and |xi_ik| <=
  // sqrt(xi_ii xi_kk) + 1e-9 (the complete-positivity bound).
  void validate() const;
};

ReducedProcessMatrix ideal_reduced_process();

// Entrywise visibility weights, the control factor tensored with the target
// factor.
Eigen::Matrix4d visibility_matrix(double v_control, double v_target);

// The phase-averaged postselected model:
// xi_ik = (-1)^{[i==2]+[k==2]} V_ik sqrt(eta_i eta_k) / eta_bar.
ReducedProcessMatrix model_reduced_process(const GateParams& params);

// Embedding into / extraction from the 16x16 chi in the matrix-unit basis;
// extraction also reports the Frobenius weight of the 240 entries the
// reduced form drops, relative to the trace.
ProcessMatrix chi_from_reduced(const ReducedProcessMatrix& xi);
std::pair<ReducedProcessMatrix, double> reduced_from_chi(
    const ProcessMatrix& chi);

struct ReducedFidelities {
  double process = 0.0;
  double bell = 0.0;  // for the ideal-Bell-producing input; equals `process`
};
ReducedFidelities fidelities_from_reduced(const ReducedProcessMatrix& xi);

struct VisibilityFit {
  double v_control = 0.0;
  double v_target = 0.0;
  double err_v_control = 0.0;
  double err_v_target = 0.0;
};

// Least squares of the model over all 16 entries with the efficiencies held
// fixed; results clamped to [0, 1].
VisibilityFit fit_visibilities(const ReducedProcessMatrix& measured,
                               const std::array<double, 4>& etas);

// ---------------------------------------------------------------------------
// Truth tables
// ---------------------------------------------------------------------------

enum class TruthBasis { cphase, cnot };

// Rows are inputs, columns measured outputs, postselected conditional
// probabilities. CPHASE basis: (HH, HV, VH, VV). CNOT basis: control in
// (H, V), target in (D, A), rows/columns ordered (HD, HA, VD, VA).
struct TruthTable {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  TruthBasis basis = TruthBasis::cphase;

  // Mean probability of the ideal-gate output state.
  double average_fidelity() const;
};

TruthTable truth_table(const ProcessMatrix& chi, TruthBasis basis);
TruthTable truth_table_from_counts(const CountsTable& counts, TruthBasis basis);

// Input/output state labels of the truth-table bases.
std::array<std::vector<Pol>, 4> truth_basis_states(TruthBasis basis);
int truth_ideal_output(TruthBasis basis, int input_row);

// ---------------------------------------------------------------------------
// Phase-noise laws
// ---------------------------------------------------------------------------

// gaussian: zero-mean with sigma = sqrt(-2 ln V); two_point: +-arccos(V)
// with equal weight. Both have mean(e^{i b}) = V.
enum class PhaseNoiseLaw { gaussian, two_point };

double sample_phase(PhaseNoiseLaw law, double visibility, RandomStream& rng);

// Prediction for the entangling input (both photons diagonal): populations
// and coherence of the postselected output in the rotated target frame.
// This is the two-photon limit of the multi-target model.
struct BellPrediction {
  double p_h = 0.0;
  double p_v = 0.0;
  double coherence = 0.0;
};
BellPrediction bell_prediction(const GateParams& params);

}  // namespace pgate::gate
