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

namespace pgate::sim {

enum class SourceMode { exactly_one, poissonian };

// One planned measurement cell: the input polarization per photon (control
// first) and the analysis basis per photon.
struct PlanCell {
  std::vector<Pol> input;
  std::vector<AnalysisBasis> settings;
};

struct SimConfig {
  SourceMode mode = SourceMode::exactly_one;
  double nbar_c = 0.0;  // mean photons per control pulse (poissonian mode)
  double nbar_t = 0.0;  // mean photons per target pulse
  gate::GateParams gate;
  gate::PhaseNoiseLaw noise_law = gate::PhaseNoiseLaw::gaussian;
  double eta_d = 1.0;      // detection efficiency per photon
  double dark_rate = 0.0;  // mean dark counts per detector per invocation
  std::uint64_t shots = 0; // gate invocations per plan cell
  std::uint64_t seed = 0;
  // Applies the D->V / A->H rotation to outgoing target photons before the
  // analysis optics (the multi-target entangling configuration).
  bool rotate_targets = false;
  std::vector<PlanCell> plan;

  void validate() const;
  nlohmann::json to_json() const;
};

// Runs the sampler: per invocation it draws the photon numbers, the control
// phase, one independent phase per target photon, propagates everything
// through the per-shot amplitude map, applies detection, and keeps events
// with exactly one detected control photon and exactly the planned number of
// detected target photons. Deterministic for a given seed regardless of
// worker count (shots are split into fixed partitions, one stream each).
//
// Poissonian extras use a simplified rule: extra photons propagate
// independently through the same per-shot map and every detection counts, so
// events with surplus detections fail postselection while undetected extras
// silently pass. Loss into the gate decoheres the two control rails;
// detector inefficiency does not.
CountsTable run_simulation(const SimConfig& config);

// 16 product inputs of (H, V, D, R) x 9 two-photon Pauli settings.
std::vector<PlanCell> tomography_plan();

// All photons prepared diagonal; one theta setting per grid point on all
// photons plus one population (Z) setting.
std::vector<PlanCell> parity_plan(int n_photons,
                                  const std::vector<double>& thetas);

// The four basis inputs of a truth table with the matching analysis setting.
std::vector<PlanCell> truth_table_plan(gate::TruthBasis basis);

}  // namespace pgate::sim
