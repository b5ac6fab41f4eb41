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

#include <cstdint>
#include <vector>

#include "pgate/counts.hpp"
#include "pgate/gate_model.hpp"

namespace pgate::ghz {

// ---------------------------------------------------------------------------
// Parity analysis
// ---------------------------------------------------------------------------

struct ParityPoint {
  double theta = 0.0;  // rad
  double s = 0.0;      // generalized Stokes parameter, in [-1, 1]
  double err = 0.0;
};

struct ParityDataset {
  int n_photons = 0;
  std::vector<ParityPoint> points;
};

struct ValueWithError {
  double value = 0.0;
  double err = 0.0;
};

// S = sum over outcomes of (+-1 parity) * count / total for one setting where
// every photon is measured in the same theta basis.
ValueWithError stokes_from_counts(const CountsCell& cell);

// Alternating sum (1/N) sum_k (-1)^k S_{k pi / N}; the dataset must contain
// exactly the N settings k pi / N for k = 0..N-1.
ValueWithError coherence_from_parities(const ParityDataset& data);

// Weighted least-squares amplitude of S = p cos(N theta), projected onto
// [0, 1]. Uses every point of the dataset.
ValueWithError fit_parity(const ParityDataset& data);

struct GhzSummary {
  ValueWithError p_h, p_v;
  ValueWithError populations;  // p_h + p_v
  ValueWithError coherence;
  ValueWithError fidelity;  // (populations + coherence) / 2
  bool entanglement_witness = false;  // fidelity above 1/2
};

GhzSummary ghz_fidelity(ValueWithError p_h, ValueWithError p_v,
                        ValueWithError coherence);

// ---------------------------------------------------------------------------
// Multi-target model
// ---------------------------------------------------------------------------
// One control photon and N-1 target photons in one pulse; every target is
// flipped conditionally on the same control. Closed forms for the
// postselected populations and coherence, and a Monte Carlo over the kept
// component of the output state that serves as their oracle.

struct GhzModelResult {
  double p_h = 0.0;
  double p_v = 0.0;
  double eta_n = 0.0;  // probability that none of the N photons is lost
  double coherence = 0.0;
};

// Requires the physical decomposition (per-rail amplitudes with R > 0 and
// R_b < 0); `v_control` is a separate knob from the two-photon fit because
// source statistics shift it.
GhzModelResult ghz_closed_forms(const gate::GateParams& params,
                                double v_control, int n_photons);

struct GhzMonteCarlo {
  GhzModelResult mean;
  GhzModelResult stderr_;  // Monte Carlo standard errors
};

// Draws the control phase once and an independent target phase per photon,
// builds the kept component, applies the D->V / A->H target rotation, and
// postselects. Deterministic for a given seed; partitioned for parallel use.
GhzMonteCarlo monte_carlo_ghz(const gate::GateParams& params, double v_control,
                              int n_photons, std::uint64_t shots,
                              gate::PhaseNoiseLaw law, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Coincidence rates
// ---------------------------------------------------------------------------

struct RateParams {
  double nbar_c = 0.0;  // mean photons per control pulse
  double nbar_t = 0.0;
  double nu_c = nan();  // mean detected control photons
  double nu_t = nan();
  double eta_d = 1.0;   // detection efficiency per photon
  double eta_c = nan();  // mean path efficiency, control
  double eta_t = nan();
  double repetition_rate = 0.0;  // 1/s

  static constexpr double nan() {
    return std::numeric_limits<double>::quiet_NaN();
  }
  // Fills nu = eta_d * eta * nbar when the parts are present; checks
  // consistency within 1e-9 when both sides are given.
  RateParams resolved() const;
};

// Mean path efficiencies implied by the per-rail loss budget:
// eta_c = (eta_sr + eta_f)/2, eta_t = (2 + |R|^2 + |R_b|^2)/4.
std::pair<double, double> mean_path_efficiencies(
    const gate::PhysicalEfficiencies& phys);

// Poisson model: p_N = nu_c e^{-nu_c} nu_t^{N-1} e^{-nu_t} / (N-1)!,
// R_N = p_N * repetition rate, for N = 1..n_max.
std::vector<double> coincidence_rates(const RateParams& rp, int n_max);

// Detected two-photon coincidences per incoming photon pair and per
// experiment cycle.
struct TwoPhotonRate {
  double per_pair = 0.0;
  double per_cycle = 0.0;
};
TwoPhotonRate two_photon_rate(double eta_d, double eta_bar,
                              double repetition_rate, double nbar_c,
                              double nbar_t);

}  // namespace pgate::ghz
