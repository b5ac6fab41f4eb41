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

#include "pgate/counts.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pgate/errors.hpp"

namespace pgate {

const CountsCell* CountsTable::find(const std::string& input,
                                    const std::string& setting) const {
  auto it = cells.find({input, setting});
  return it == cells.end() ? nullptr : &it->second;
}

std::string CountsTable::to_csv() const {
  std::ostringstream os;
  os << "input,setting,outcome,count\n";
  for (const auto& [key, cell] : cells)
    for (const auto& [outcome, count] : cell.counts)
      os << key.first << ',' << key.second << ',' << outcome << ',' << count
         << '\n';
  return os.str();
}

nlohmann::json CountsTable::sidecar() const {
  nlohmann::json inv = nlohmann::json::array();
  for (const auto& [key, cell] : cells)
    inv.push_back({{"input", key.first},
                   {"setting", key.second},
                   {"invocations", cell.invocations}});
  nlohmann::json j;
  j["schema_version"] = 1;
  j["invocations"] = std::move(inv);
  j["meta"] = meta;
  return j;
}

CountsTable CountsTable::from_csv(const std::string& csv,
                                  const nlohmann::json& sidecar) {
  CountsTable table;
  if (sidecar.contains("meta")) table.meta = sidecar["meta"];
  require(sidecar.contains("invocations"), "invalid_counts",
          "sidecar lacks invocation totals");
  for (const auto& row : sidecar["invocations"]) {
    auto& cell = table.cell(row["input"].get<std::string>(),
                            row["setting"].get<std::string>());
    cell.invocations = row["invocations"].get<std::uint64_t>();
  }

  std::istringstream is(csv);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::array<std::string, 4> fields;
    size_t pos = 0;
    for (int f = 0; f < 4; ++f) {
      const size_t next = line.find(',', pos);
      if (f < 3) {
        require(next != std::string::npos, "invalid_counts",
                "malformed counts row: " + line);
        fields[f] = line.substr(pos, next - pos);
        pos = next + 1;
      } else {
        fields[f] = line.substr(pos);
      }
    }
    auto it = table.cells.find({fields[0], fields[1]});
    require(it != table.cells.end(), "invalid_counts",
            "counts row without invocation record: " + line);
    it->second.counts[fields[2]] += std::stoull(fields[3]);
  }
  return table;
}

namespace {
std::string sidecar_path_for(const std::string& csv_path) {
  const size_t dot = csv_path.rfind('.');
  if (dot == std::string::npos) return csv_path + ".json";
  return csv_path.substr(0, dot) + ".json";
}
}  // namespace

void CountsTable::save(const std::string& csv_path) const {
  std::ofstream csv(csv_path);
  require(csv.good(), "io_error", "cannot write " + csv_path);
  csv << to_csv();
  std::ofstream side(sidecar_path_for(csv_path));
  require(side.good(), "io_error", "cannot write sidecar for " + csv_path);
  side << sidecar().dump(2) << '\n';
}

CountsTable CountsTable::load(const std::string& csv_path) {
  std::ifstream csv(csv_path);
  require(csv.good(), "io_error", "cannot read " + csv_path);
  std::stringstream buf;
  buf << csv.rdbuf();
  std::ifstream side(sidecar_path_for(csv_path));
  require(side.good(), "io_error", "cannot read sidecar for " + csv_path);
  nlohmann::json sidecar = nlohmann::json::parse(side);
  return from_csv(buf.str(), sidecar);
}

namespace {
// Poisson deviate that stays exact for small means and switches to a rounded
// normal approximation for large ones (bootstrap counts can be ~1e5).
std::uint64_t poisson_large(double mean, RandomStream& rng) {
  if (mean < 50.0) return rng.poisson(mean);
  const double v = mean + std::sqrt(mean) * rng.normal();
  return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
}
}  // namespace

CountsTable resample_counts(const CountsTable& table, RandomStream& rng) {
  CountsTable out;
  out.meta = table.meta;
  for (const auto& [key, cell] : table.cells) {
    CountsCell& c = out.cells[key];
    c.invocations = cell.invocations;
    for (const auto& [outcome, count] : cell.counts)
      c.counts[outcome] = poisson_large(static_cast<double>(count), rng);
  }
  return out;
}

}  // namespace pgate
