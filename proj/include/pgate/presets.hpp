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

#include <string>

#include <json.hpp>

#include "pgate/cavity.hpp"
#include "pgate/gate_model.hpp"
#include "pgate/ghz.hpp"

namespace pgate::presets {

// The "paper" preset: the published reference values of the cavity
// Rydberg-EIT photon-gate experiment this laboratory models. Every fixture
// used by the regression and acceptance suites lives here, annotated with
// what was measured or fitted. The embedded string is the source of truth;
// presets/paper.json in the repository must stay identical to it.
const std::string& paper_preset_text();
nlohmann::json paper_preset();

// Typed accessors for the common parameter groups. `gate_params` carries the
// measured basis-state efficiencies; `gate_params_physical` carries the bare
// per-rail decomposition the multi-target model needs. The two differ by
// trivial optical losses.
gate::GateParams gate_params(const nlohmann::json& preset);
gate::GateParams gate_params_physical(const nlohmann::json& preset);
gate::GateParams gate_params_alt(const nlohmann::json& preset);
cavity::CavityParams cavity_params(const nlohmann::json& preset);
cavity::EitParams eit_fit_params(const nlohmann::json& preset);
cavity::GeometryParams geometry_params(const nlohmann::json& preset);
cavity::BlockadeParams blockade_params(const nlohmann::json& preset);
ghz::RateParams rate_params(const nlohmann::json& preset);

}  // namespace pgate::presets
