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
#include <vector>

#include <json.hpp>

#include "pgate/cavity.hpp"
#include "pgate/ghz.hpp"
#include "pgate/linalg.hpp"

namespace pgate::io {

using ordered_json = nlohmann::ordered_json;

// Matrices travel as row-major arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

// Spectrum CSV: detuning_MHz,intensity,intensity_err,phase_rad,phase_err.
std::string spectrum_to_csv(const std::vector<cavity::SpectrumPoint>& points);
std::vector<cavity::SpectrumPoint> spectrum_from_csv(const std::string& csv);

// Parity CSV: theta_rad,S,S_err,N.
std::string parity_to_csv(const ghz::ParityDataset& data);
ghz::ParityDataset parity_from_csv(const std::string& csv);

// Machine-readable report envelope. Key order is fixed so reruns are
// byte-identical apart from the timestamp.
ordered_json make_report(const std::string& command,
                         const ordered_json& config,
                         const ordered_json& result);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace pgate::io
