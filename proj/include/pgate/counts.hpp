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
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "pgate/rng.hpp"

namespace pgate {

// One (input state, analysis setting) cell: how many times the gate was
// invoked and how many postselected events landed on each detection-outcome
// string (one '+'/'-' per detected photon, control first). The difference
// between the invocation count and the outcome total is the postselection
// loss.
struct CountsCell {
  std::uint64_t invocations = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
  }
};

// The interchange format between the simulator and the analysis stack.
// Serialized as a CSV (input,setting,outcome,count) next to a JSON sidecar
// that carries per-cell invocation totals and a config echo.
struct CountsTable {
  std::map<std::pair<std::string, std::string>, CountsCell> cells;
  nlohmann::json meta;

  CountsCell& cell(const std::string& input, const std::string& setting) {
    return cells[{input, setting}];
  }
  const CountsCell* find(const std::string& input,
                         const std::string& setting) const;

  std::string to_csv() const;
  nlohmann::json sidecar() const;
  static CountsTable from_csv(const std::string& csv,
                              const nlohmann::json& sidecar);

  void save(const std::string& csv_path) const;
  static CountsTable load(const std::string& csv_path);
};

// Statistical resample of every cell: each outcome count is redrawn as an
// independent Poisson variable around the observed value, with invocation
// totals kept fixed. Used for bootstrap error bars.
CountsTable resample_counts(const CountsTable& table, RandomStream& rng);

}  // namespace pgate
