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

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace pgate::cavity {

using cxd = std::complex<double>;

// ---------------------------------------------------------------------------
// Cavity bookkeeping
// ---------------------------------------------------------------------------

// One-sided ring cavity described by the input-output coupler and the
// combined high reflectors. Finesses obey 1/F = 1/F_in + 1/F_h, rates
// kappa_x = axial_mode_spacing / (2 F_x) with kappa = kappa_in + kappa_h, and
// F_x = -pi / ln|r_x|. Unknown fields are NaN until derived.
struct CavityParams {
  double axial_mode_spacing = nan();  // rad/s
  double finesse = nan();
  double finesse_in = nan();
  double finesse_h = nan();
  double kappa = nan();     // rad/s, HWHM
  double kappa_in = nan();  // rad/s
  double kappa_h = nan();   // rad/s
  double r_in_sq = nan();   // |r_in|^2
  double r_h_sq = nan();    // |r_h|^2 (product of all high reflectors)
  double gamma = nan();     // rad/s, atomic HWHM
  double gamma_e = nan();   // rad/s, population decay rate; gamma_e = 2 gamma
  double g = nan();         // rad/s, max single-atom coupling

  static constexpr double nan() {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double kin_ratio() const;  // kappa_in / kappa
  void require_rates() const;
};

// Fills every field derivable from the given ones, propagating the relations
// to a fixed point. Provided fields that disagree with a derived value by
// more than 1e-6 relative raise "inconsistent_params"; asking via
// require_full for fields that stay unknown raises "under_determined".
CavityParams complete_cavity_params(CavityParams partial,
                                    bool require_full = false);

// ---------------------------------------------------------------------------
// Reflection model
// ---------------------------------------------------------------------------

struct EitParams {
  double cooperativity = 0.0;  // collective C
  double rabi = 0.0;           // coupling Rabi frequency (rad/s)
  double gamma_rg = 0.0;       // ground-Rydberg coherence decay (1/s)
  double delta_s = 0.0;        // signal detuning from the atomic line (rad/s)
  double delta_co = 0.0;       // coupling detuning (rad/s)
  double delta_c = 0.0;        // detuning from the cavity resonance (rad/s)
};

// C_eff = C Gamma_e / (Gamma_e - 2i Delta_s + |Omega|^2 / (gamma_rg - 2i(Delta_co + Delta_s))).
cxd effective_cooperativity(const EitParams& p, double gamma_e);

// R = -1 + 2 kappa_in / (kappa (1 + C_eff) - i Delta_c).
cxd reflection(const EitParams& p, const CavityParams& cavity);

// The single-mode model needs |C_eff| well below F/pi; false flags an
// advisory violation, not an error.
bool reflection_model_valid(const EitParams& p, const CavityParams& cavity);

struct SpectrumPoint {
  double delta_c = 0.0;  // rad/s
  cxd amplitude;         // model reflection
  double intensity = 0.0;
  double intensity_err = 0.0;
  double phase = 0.0;  // rad
  double phase_err = 0.0;
};

// Sweeps the shared detuning: delta_s = delta, delta_c = delta +
// cavity_offset (the polarization-mode splitting, usually 0); the stored
// delta_s/delta_co of `p` act as constant offsets.
std::vector<SpectrumPoint> spectrum(const EitParams& p,
                                    const CavityParams& cavity,
                                    const std::vector<double>& detunings,
                                    double cavity_offset = 0.0);

// |arg R(coupling off) - arg R(coupling on)| at delta_c = 0, mapped to
// [0, pi]. Only the relative phase is physical.
double conditional_phase(const EitParams& p, const CavityParams& cavity);

// ---------------------------------------------------------------------------
// Spectrum fitting
// ---------------------------------------------------------------------------

enum class FitStage { absorption, eit };

struct SpectrumFit {
  EitParams params;
  double err_cooperativity = 0.0;
  double err_rabi = 0.0;
  double err_gamma_rg = 0.0;
  double reduced_chisq = 0.0;
  int n_points = 0;
  bool converged = false;
};

// Weighted least squares over the joint residuals of |R|^2 and arg(R), phase
// residuals wrapped to (-pi, pi]. The absorption stage frees {C}; the EIT
// stage frees {Omega, gamma_rg} at fixed C. Needs at least 3 points per free
// parameter and positive error bars.
SpectrumFit fit_spectrum(const std::vector<SpectrumPoint>& points,
                         FitStage stage, const CavityParams& cavity,
                         const EitParams& initial);

// ---------------------------------------------------------------------------
// Derived quantities
// ---------------------------------------------------------------------------

// eta_sr = (kappa_in/kappa * C/(C+1))^2 exp(-gamma_rg t), the adiabatic
// storage-plus-retrieval efficiency; t covers the pulse and the dark time.
double storage_retrieval_efficiency(double cooperativity, double kin_ratio,
                                    double gamma_rg, double t);

struct BlockadeParams {
  double c3 = 0.0;        // J m^3
  double delta_f = 0.0;   // Forster defect (rad/s)
  double gamma_f = 0.0;   // pair-coherence decay (1/s)
  double alpha_rp = 0.0;  // static polarizabilities, J (m/V)^2
  double alpha_r = 0.0;
  double alpha_gp = 0.0;
};

// gamma_F = |(alpha_gp - alpha_rp) / alpha_r| * gamma_rg, assuming both
// decays are driven by the same electric-field noise.
double forster_gamma_estimate(double gamma_rg, const BlockadeParams& bp);

// R_block = |(2 C3 / hbar Omega)^2 * Gamma_e / (gamma_F - 2i Delta_F) * C|^(1/6).
double blockade_radius(const BlockadeParams& bp, double cooperativity,
                       double rabi, double gamma_e);

struct GeometryParams {
  double waist = 0.0;              // m
  double round_trip_length = 0.0;  // m
  double sigma_x = 0.0;            // m, cloud rms radius
  double sigma_y = 0.0;            // m
  double atom_number = 0.0;
  double dipole_moment = 0.0;  // C m
  double omega = 0.0;          // transition angular frequency (rad/s)
};

struct CouplingEstimate {
  double g = 0.0;  // rad/s
  double single_atom_cooperativity = 0.0;
  double transverse_factor = 0.0;
  double cooperativity_max = 0.0;       // N_a * g^2/(kappa gamma)
  double cooperativity_expected = 0.0;  // with the transverse factor
};

// g = d_eg sqrt(2/(pi w^2 L)) sqrt(omega / 2 hbar eps0) for a traveling-wave
// mode; the transverse factor [1+(2sx/w)^2]^(-1/2) [1+(2sy/w)^2]^(-1/2)
// accounts for the cloud size.
CouplingEstimate coupling_and_cooperativity(const GeometryParams& geo,
                                            const CavityParams& cavity);

}  // namespace pgate::cavity
