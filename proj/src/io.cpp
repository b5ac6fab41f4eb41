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

#include "pgate/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pgate/errors.hpp"
#include "pgate/units.hpp"

namespace pgate::io {

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  require(static_cast<Eigen::Index>(data.size()) == rows * cols,
          "invalid_matrix", "matrix payload size mismatch");
  Mat m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++k)
      m(i, jj) = cxd(data[k][0].get<double>(), data[k][1].get<double>());
  return m;
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace

std::string spectrum_to_csv(const std::vector<cavity::SpectrumPoint>& points) {
  std::ostringstream os;
  os << "detuning_MHz,intensity,intensity_err,phase_rad,phase_err\n";
  for (const auto& p : points)
    os << fmt(units::to_mhz(p.delta_c)) << ',' << fmt(p.intensity) << ','
       << fmt(p.intensity_err) << ',' << fmt(p.phase) << ','
       << fmt(p.phase_err) << '\n';
  return os.str();
}

std::vector<cavity::SpectrumPoint> spectrum_from_csv(const std::string& csv) {
  std::vector<cavity::SpectrumPoint> out;
  std::istringstream is(csv);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    require(f.size() == 5, "invalid_csv", "spectrum row needs 5 columns");
    cavity::SpectrumPoint p;
    p.delta_c = units::mhz(std::stod(f[0]));
    p.intensity = std::stod(f[1]);
    p.intensity_err = std::stod(f[2]);
    p.phase = std::stod(f[3]);
    p.phase_err = std::stod(f[4]);
    out.push_back(p);
  }
  return out;
}

std::string parity_to_csv(const ghz::ParityDataset& data) {
  std::ostringstream os;
  os << "theta_rad,S,S_err,N\n";
  for (const auto& p : data.points)
    os << fmt(p.theta) << ',' << fmt(p.s) << ',' << fmt(p.err) << ','
       << data.n_photons << '\n';
  return os.str();
}

ghz::ParityDataset parity_from_csv(const std::string& csv) {
  ghz::ParityDataset data;
  std::istringstream is(csv);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    require(f.size() == 4, "invalid_csv", "parity row needs 4 columns");
    ghz::ParityPoint p;
    p.theta = std::stod(f[0]);
    p.s = std::stod(f[1]);
    p.err = std::stod(f[2]);
    data.points.push_back(p);
    data.n_photons = std::stoi(f[3]);
  }
  require(!data.points.empty(), "invalid_csv", "empty parity dataset");
  return data;
}

ordered_json make_report(const std::string& command,
                         const ordered_json& config,
                         const ordered_json& result) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  const auto now = std::chrono::system_clock::now();
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count();
  j["generated_at"] = secs;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  require(os.good(), "io_error", "cannot write " + path);
  os << text;
}

std::string read_text(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), "io_error", "cannot read " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

}  // namespace pgate::io
