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

#include "pgate/presets.hpp"

#include "pgate/errors.hpp"
#include "pgate/units.hpp"

namespace pgate::presets {

const std::string& paper_preset_text() {
  static const std::string text = R"JSON({
  "schema_version": 1,
  "name": "paper",
  "description": "Reference values of the published cavity Rydberg-EIT photon-photon gate experiment; annotations say what each number is.",
  "gate": {
    "eta_cphase": {"value": [0.351, 0.157, 0.611, 0.549], "err": [0.007, 0.014, 0.001, 0.010], "label": "efficiencies of the four basis states (HH, HV, VH, VV), settings optimized for the mean", "kind": "measured"},
    "v_control": {"value": 0.86, "err": 0.04, "label": "control-qubit visibility from the reduced-process fit", "kind": "fitted"},
    "v_target": {"value": 0.78, "err": 0.03, "label": "target-qubit visibility from the reduced-process fit", "kind": "fitted"},
    "physical": {
      "eta_sr": {"value": 0.39, "err": 0.01, "label": "storage-plus-retrieval efficiency of the control photon", "kind": "measured"},
      "eta_f": {"value": 0.65, "err": 0.01, "label": "delay-fiber transmission including mode matching", "kind": "measured"},
      "r_sq": {"value": 0.90, "err": 0.01, "label": "target reflectivity with the coupling light on, no stored excitation", "kind": "measured"},
      "srt_rb_sq": {"value": 0.17, "err": 0.02, "label": "product of blocked reflectivity and storage-while-reflecting efficiency", "kind": "measured"}
    }
  },
  "gate_alt": {
    "eta_cphase": {"value": [0.382, 0.244, 0.611, 0.344], "err": [0.007, 0.022, 0.001, 0.005], "label": "efficiencies with settings optimized for the minimum eigenvalue", "kind": "measured"},
    "eta_bar": {"value": 0.395, "err": 0.006, "label": "average efficiency at those settings", "kind": "measured"},
    "eta_min": {"value": 0.244, "err": 0.022, "label": "smallest efficiency-matrix eigenvalue at those settings", "kind": "measured"},
    "bell_fidelity": {"value": 0.73, "err": 0.01, "label": "postselected entangled-state fidelity at those settings", "kind": "measured"}
  },
  "cavity": {
    "axial_mode_spacing_ghz": {"value": 1.59, "label": "axial mode spacing (frequency, GHz)", "kind": "measured"},
    "finesse": {"value": 350, "label": "loaded finesse", "kind": "measured"},
    "finesse_h": {"value": 2.0e4, "label": "finesse of the high reflectors alone", "kind": "derived"},
    "gamma_mhz": {"value": 3.0, "label": "atomic HWHM linewidth (MHz)", "kind": "reference"},
    "gamma_e_mhz": {"value": 6.0666, "label": "atomic population decay rate (MHz)", "kind": "reference"},
    "g_mhz": {"value": 1.0, "label": "maximal single-atom coupling (MHz)", "kind": "measured"},
    "waist_um": {"value": 8.5, "label": "cavity beam waist (um)", "kind": "measured"},
    "wavelength_nm": {"value": 780, "label": "signal wavelength (nm)", "kind": "reference"},
    "mode_splitting_mhz": {"value": 0.9, "label": "circular-polarization mode splitting (MHz)", "kind": "measured"}
  },
  "eit_fit": {
    "cooperativity": {"value": 21.4, "err": 0.2, "label": "collective cooperativity from the reflection-spectrum fit", "kind": "fitted"},
    "rabi_mhz": {"value": 42.7, "err": 0.3, "label": "coupling Rabi frequency from the spectrum fit (MHz)", "kind": "fitted"},
    "coherence_time_us": {"value": 0.22, "err": 0.05, "label": "ground-Rydberg coherence time during the target pulse (us)", "kind": "fitted"}
  },
  "storage": {
    "cooperativity": {"value": 21, "label": "cooperativity used by the storage model", "kind": "derived"},
    "kin_ratio": {"value": 0.9825, "label": "input-coupler fraction of the cavity linewidth", "kind": "derived"},
    "coherence_time_us": {"value": 7.0, "label": "ground-Rydberg coherence time in the dark (us)", "kind": "measured"},
    "hold_time_us": {"value": 2.0, "label": "pulse plus dark time covered by the storage model (us)", "kind": "reference"},
    "predicted_eta_sr": {"value": 0.661, "label": "adiabatic-model storage-plus-retrieval efficiency", "kind": "derived"},
    "measured_eta_sr": {"value": 0.39, "err": 0.01, "label": "measured storage-plus-retrieval efficiency", "kind": "measured"}
  },
  "geometry": {
    "sigma_x_um": {"value": 3.3, "label": "cloud rms radius along x (um)", "kind": "measured"},
    "sigma_y_um": {"value": 4.5, "label": "cloud rms radius along y (um)", "kind": "measured"},
    "atom_number": {"value": 260, "label": "atom number", "kind": "measured"},
    "dipole_moment_cm": {"value": 2.5559066078581155e-29, "label": "transition dipole moment reproducing the quoted coupling (C m)", "kind": "derived"}
  },
  "blockade": {
    "c3_au": {"value": 1.2e6, "label": "pair-interaction C3 coefficient (atomic units)", "kind": "reference"},
    "delta_f": {"value": 0.0, "label": "residual pair-state defect, tuned to zero (rad/s)", "kind": "measured"},
    "alpha_rp_au": {"value": 1.5e11, "label": "static polarizability of the storage Rydberg state (atomic units)", "kind": "reference"},
    "alpha_r_au": {"value": 2.0e11, "label": "static polarizability of the target Rydberg state (atomic units)", "kind": "reference"},
    "alpha_gp_au": {"value": 1.9e12, "label": "static polarizability of the coupled pair state (atomic units)", "kind": "reference"}
  },
  "rates": {
    "eta_d": {"value": 0.765, "label": "per-photon detection efficiency (fiber coupling times detector)", "kind": "measured"},
    "repetition_rate_hz": {"value": 2300, "label": "average repetition rate including sample preparation (1/s)", "kind": "measured"},
    "nbar_c": {"value": 0.14, "err": 0.0, "label": "mean control photons per pulse, two-photon runs", "kind": "measured"},
    "nbar_t": {"value": 0.13, "err": 0.0, "label": "mean target photons per pulse, two-photon runs", "kind": "measured"},
    "ghz_nbar_c": {"value": 0.31, "label": "mean control photons per pulse, multi-photon runs", "kind": "measured"},
    "ghz_nbar_t": {"value": 0.41, "label": "mean target photons per pulse, multi-photon runs", "kind": "measured"},
    "nu_c": {"value": 0.12, "label": "mean detected control photons per invocation", "kind": "derived"},
    "nu_t": {"value": 0.26, "label": "mean detected target photons per invocation", "kind": "derived"},
    "table_rn": {"value": [171, 46.0, 6.0, 0.46, 0.028], "err": [1, 0.2, 0.1, 0.02, 0.005], "label": "measured N-fold coincidence rates, N = 1..5 (1/s)", "kind": "measured"}
  },
  "ghz": {
    "v_c_eff": {"value": 0.72, "label": "effective control visibility of the multi-photon fit; source statistics lower it below the two-photon value", "kind": "fitted"},
    "fidelities": {
      "3": {"value": 0.623, "err": 0.004, "label": "three-photon entangled-state fidelity", "kind": "measured"},
      "4": {"value": 0.546, "err": 0.014, "label": "four-photon entangled-state fidelity", "kind": "measured"},
      "5": {"value": 0.548, "err": 0.053, "label": "five-photon entangled-state fidelity", "kind": "measured"},
      "6": {"value": 0.359, "err": 0.037, "label": "six-photon entangled-state fidelity", "kind": "measured"}
    },
    "n6_nbar_c": {"value": 0.28, "label": "mean control photons per pulse, six-photon run", "kind": "measured"},
    "n6_nbar_t": {"value": 0.88, "label": "mean target photons per pulse, six-photon run", "kind": "measured"}
  },
  "fixtures": {
    "process_fidelity_ps": {"value": 0.81, "err": 0.02, "label": "postselected process fidelity", "kind": "measured"},
    "process_fidelity": {"value": 0.34, "err": 0.01, "label": "process fidelity without postselection", "kind": "measured"},
    "bell_fidelity": {"value": 0.79, "err": 0.02, "label": "postselected entangled-state fidelity", "kind": "measured"},
    "truth_cphase": {"value": 0.994, "err": 0.004, "label": "average fidelity of the phase-basis truth table", "kind": "measured"},
    "truth_cnot": {"value": 0.87, "err": 0.01, "label": "average fidelity of the flip-basis truth table", "kind": "measured"},
    "eta_bar": {"value": 0.417, "err": 0.005, "label": "average efficiency", "kind": "measured"},
    "model_process_fidelity": {"value": 0.786, "err": 0.005, "label": "reduced-process model vs ideal gate", "kind": "derived"},
    "empty_cavity_r_sq": {"value": 0.932, "label": "resonant empty-cavity reflectivity", "kind": "measured"},
    "r_in_sq": {"value": 0.983, "label": "input-coupler reflectivity", "kind": "derived"},
    "legacy_etas": {"value": [0.077, 0.023, 0.015, 0.0045], "label": "basis-state efficiencies of the free-space predecessor experiment", "kind": "reference"},
    "legacy_harmonic_mean": {"value": 0.012, "label": "harmonic mean of those efficiencies", "kind": "derived"},
    "transverse_factor": {"value": 0.54, "label": "cooperativity reduction from the transverse cloud size", "kind": "derived"},
    "single_atom_cooperativity": {"value": 0.14, "label": "single-atom cooperativity", "kind": "derived"},
    "blockade_radius_um": {"value": 7.0, "label": "estimated blockade radius (um)", "kind": "derived"},
    "forster_time_ns": {"value": 25, "err": 6, "label": "estimated pair-coherence time (ns)", "kind": "derived"},
    "two_photon_rate_per_pair": {"value": 560, "label": "two-photon coincidences per incoming pair (1/s)", "kind": "derived"},
    "two_photon_rate": {"value": 10, "label": "naive two-photon coincidence rate estimate (1/s)", "kind": "derived"},
    "two_photon_rate_daily": {"value": 9, "label": "routinely observed two-photon coincidence rate (1/s)", "kind": "measured"}
  }
}
)JSON";
  return text;
}

nlohmann::json paper_preset() {
  return nlohmann::json::parse(paper_preset_text());
}

namespace {
double val(const nlohmann::json& j) { return j.at("value").get<double>(); }
}  // namespace

// The measured basis-state efficiencies include trivial optical losses on
// top of the per-rail budget, so they are not consistent with the bare
// physical decomposition and the two parameter sets are kept separate.
gate::GateParams gate_params(const nlohmann::json& preset) {
  const auto& g = preset.at("gate");
  gate::GateParams p;
  const auto& eta = g.at("eta_cphase").at("value");
  for (int i = 0; i < 4; ++i) p.eta[i] = eta[i].get<double>();
  p.v_control = val(g.at("v_control"));
  p.v_target = val(g.at("v_target"));
  p.validate();
  return p;
}

gate::GateParams gate_params_physical(const nlohmann::json& preset) {
  const auto& g = preset.at("gate");
  const auto& ph = g.at("physical");
  gate::PhysicalEfficiencies phys;
  phys.eta_sr = val(ph.at("eta_sr"));
  phys.eta_f = val(ph.at("eta_f"));
  phys.r_sq = val(ph.at("r_sq"));
  phys.srt_rb_sq = val(ph.at("srt_rb_sq"));
  return gate::GateParams::from_physical(phys, val(g.at("v_control")),
                                         val(g.at("v_target")));
}

gate::GateParams gate_params_alt(const nlohmann::json& preset) {
  gate::GateParams p;
  const auto& eta = preset.at("gate_alt").at("eta_cphase").at("value");
  for (int i = 0; i < 4; ++i) p.eta[i] = eta[i].get<double>();
  p.v_control = val(preset.at("gate").at("v_control"));
  p.v_target = val(preset.at("gate").at("v_target"));
  return p;
}

cavity::CavityParams cavity_params(const nlohmann::json& preset) {
  const auto& c = preset.at("cavity");
  cavity::CavityParams p;
  p.axial_mode_spacing = units::ghz(val(c.at("axial_mode_spacing_ghz")));
  p.finesse = val(c.at("finesse"));
  p.finesse_h = val(c.at("finesse_h"));
  p.gamma = units::mhz(val(c.at("gamma_mhz")));
  p.gamma_e = units::mhz(val(c.at("gamma_e_mhz")));
  p.g = units::mhz(val(c.at("g_mhz")));
  return cavity::complete_cavity_params(p);
}

cavity::EitParams eit_fit_params(const nlohmann::json& preset) {
  const auto& e = preset.at("eit_fit");
  cavity::EitParams p;
  p.cooperativity = val(e.at("cooperativity"));
  p.rabi = units::mhz(val(e.at("rabi_mhz")));
  p.gamma_rg = 1.0 / units::us(val(e.at("coherence_time_us")));
  return p;
}

cavity::GeometryParams geometry_params(const nlohmann::json& preset) {
  const auto& g = preset.at("geometry");
  const auto& c = preset.at("cavity");
  cavity::GeometryParams p;
  p.waist = units::um(val(c.at("waist_um")));
  const double mode_spacing = units::ghz(val(c.at("axial_mode_spacing_ghz")));
  p.round_trip_length = units::two_pi * units::c0 / mode_spacing;
  p.sigma_x = units::um(val(g.at("sigma_x_um")));
  p.sigma_y = units::um(val(g.at("sigma_y_um")));
  p.atom_number = val(g.at("atom_number"));
  p.dipole_moment = val(g.at("dipole_moment_cm"));
  p.omega = units::two_pi * units::c0 / (val(c.at("wavelength_nm")) * 1e-9);
  return p;
}

cavity::BlockadeParams blockade_params(const nlohmann::json& preset) {
  const auto& b = preset.at("blockade");
  cavity::BlockadeParams p;
  p.c3 = val(b.at("c3_au")) * units::au_c3;
  p.delta_f = val(b.at("delta_f"));
  p.alpha_rp = val(b.at("alpha_rp_au")) * units::au_polarizability;
  p.alpha_r = val(b.at("alpha_r_au")) * units::au_polarizability;
  p.alpha_gp = val(b.at("alpha_gp_au")) * units::au_polarizability;
  return p;
}

ghz::RateParams rate_params(const nlohmann::json& preset) {
  const auto& r = preset.at("rates");
  ghz::RateParams p;
  p.nbar_c = val(r.at("nbar_c"));
  p.nbar_t = val(r.at("nbar_t"));
  p.nu_c = val(r.at("nu_c"));
  p.nu_t = val(r.at("nu_t"));
  p.eta_d = val(r.at("eta_d"));
  p.repetition_rate = val(r.at("repetition_rate_hz"));
  return p;
}

}  // namespace pgate::presets
