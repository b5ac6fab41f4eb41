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

#include "pgate/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pgate/errors.hpp"
#include "pgate/units.hpp"

namespace pgate {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
}

Eigen::Vector2cd pol_ket(Pol p) {
  switch (p) {
    case Pol::H: return {1.0, 0.0};
    case Pol::V: return {0.0, 1.0};
    case Pol::D: return {inv_sqrt2, inv_sqrt2};
    case Pol::A: return {inv_sqrt2, -inv_sqrt2};
    case Pol::R: return {inv_sqrt2, cxd(0.0, -inv_sqrt2)};
    case Pol::L: return {inv_sqrt2, cxd(0.0, inv_sqrt2)};
  }
  fail_validation("invalid_label", "unknown polarization label");
}

char pol_char(Pol p) {
  switch (p) {
    case Pol::H: return 'H';
    case Pol::V: return 'V';
    case Pol::D: return 'D';
    case Pol::A: return 'A';
    case Pol::R: return 'R';
    case Pol::L: return 'L';
  }
  return '?';
}

Pol pol_from_char(char c) {
  switch (c) {
    case 'H': return Pol::H;
    case 'V': return Pol::V;
    case 'D': return Pol::D;
    case 'A': return Pol::A;
    case 'R': return Pol::R;
    case 'L': return Pol::L;
    default:
      fail_validation("invalid_label",
                      std::string("unknown polarization character '") + c + "'");
  }
}

std::vector<Pol> parse_pol_labels(std::string_view s) {
  std::vector<Pol> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(pol_from_char(c));
  return out;
}

std::string pol_string(const std::vector<Pol>& labels) {
  std::string out;
  out.reserve(labels.size());
  for (Pol p : labels) out.push_back(pol_char(p));
  return out;
}

Ket polarization_ket(const std::vector<Pol>& labels) {
  require(!labels.empty(), "invalid_label", "empty polarization label");
  Vec amps = Vec::Ones(1);
  for (Pol p : labels) {
    const Eigen::Vector2cd k = pol_ket(p);
    Vec next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next(2 * i) = amps(i) * k(0);
      next(2 * i + 1) = amps(i) * k(1);
    }
    amps.swap(next);
  }
  return {amps};
}

void DensityMatrix::validate() const {
  if (hermiticity_error(rho) > 1e-10)
    fail_numerical("not_hermitian", "density matrix is not Hermitian");
  if (min_eigenvalue(rho) < -1e-10)
    fail_numerical("not_psd", "density matrix has a negative eigenvalue");
  const double tr = trace_real();
  if (tr < 0.0 || tr > 1.0 + 1e-10)
    fail_numerical("bad_trace", "density matrix trace outside [0, 1]");
}

void GateUnitary::validate(double tol) const {
  const Eigen::Matrix4cd err = u.adjoint() * u - Eigen::Matrix4cd::Identity();
  if (err.cwiseAbs().maxCoeff() > tol)
    fail_numerical("not_unitary", "gate matrix is not unitary");
}

GateUnitary cphase_unitary() {
  GateUnitary g;
  g.u = Eigen::Vector4cd(1.0, -1.0, 1.0, 1.0).asDiagonal();
  return g;
}

Eigen::Matrix2cd cnot_basis_rotation() {
  Eigen::Matrix2cd w;
  w << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  return w;
}

GateUnitary cnot_equivalent_unitary() {
  const Eigen::Matrix2cd w = cnot_basis_rotation();
  Eigen::Matrix4cd iw = Eigen::Matrix4cd::Zero();
  iw.block<2, 2>(0, 0) = w;
  iw.block<2, 2>(2, 2) = w;
  GateUnitary g;
  g.u = iw * cphase_unitary().u * iw.adjoint();
  return g;
}

OperatorBasis OperatorBasis::build(std::string name, std::vector<Mat> elements) {
  require(!elements.empty(), "invalid_basis", "empty operator basis");
  const Eigen::Index d = elements[0].rows();
  require(d >= 1 && elements[0].cols() == d, "invalid_basis",
          "basis elements must be square");
  const auto n = static_cast<Eigen::Index>(elements.size());
  require(n == d * d, "invalid_basis",
          "an operator basis needs d^2 elements");
  for (const Mat& e : elements)
    require(e.rows() == d && e.cols() == d, "invalid_basis",
            "inconsistent element dimensions");

  OperatorBasis b;
  b.name_ = std::move(name);
  b.dim_ = d;
  b.elements_ = std::move(elements);

  b.metric_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b.metric_(i, j) = frob_inner(b.elements_[i], b.elements_[j]);

  if (!(condition_number(b.metric_) < 1e12))
    fail_numerical("singular_metric",
                   "operator set is not a basis (singular metric)");

  const Mat h = b.metric_.inverse();
  b.dual_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Mat dj = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) dj += b.elements_[i] * h(i, j);
    b.dual_[j] = dj;
  }

  // Duality check; failure here indicates a badly conditioned inversion.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cxd v = frob_inner(b.elements_[i], b.dual_[j]);
      const cxd want = (i == j) ? cxd(1.0, 0.0) : cxd(0.0, 0.0);
      if (std::abs(v - want) > 1e-10)
        fail_numerical("singular_metric", "dual basis construction failed");
    }

  b.orthonormal_ =
      (b.metric_ - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10;
  return b;
}

Vec OperatorBasis::coefficients(const Mat& b) const {
  const auto n = size();
  Vec c(n);
  for (Eigen::Index i = 0; i < n; ++i) c(i) = frob_inner(dual_[i], b);
  return c;
}

Mat OperatorBasis::reconstruct(const Vec& coeffs) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < size(); ++i) out += elements_[i] * coeffs(i);
  return out;
}

OperatorBasis pauli_product_basis(int n_qubits, bool normalized) {
  require(n_qubits >= 1, "invalid_basis", "need at least one qubit");
  Mat id = Mat::Identity(2, 2);
  Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cxd(0, -1), cxd(0, 1), 0;
  z << 1, 0, 0, -1;
  const std::vector<Mat> single = {id, x, y, z};

  std::vector<Mat> elements = {Mat::Ones(1, 1)};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<Mat> next;
    next.reserve(elements.size() * 4);
    for (const Mat& e : elements)
      for (const Mat& p : single) next.push_back(kron(e, p));
    elements.swap(next);
  }
  if (normalized) {
    const double scale = std::pow(2.0, -0.5 * n_qubits);
    for (Mat& e : elements) e *= scale;
  }
  std::string name = "pauli" + std::to_string(n_qubits) +
                     (normalized ? "n" : "");
  return OperatorBasis::build(std::move(name), std::move(elements));
}

OperatorBasis gate_adapted_basis(const GateUnitary& u, double scale,
                                 std::string name) {
  const OperatorBasis pauli = pauli_product_basis(2, false);
  std::vector<Mat> elements;
  elements.reserve(16);
  for (Eigen::Index i = 0; i < 16; ++i)
    elements.push_back(u.u * pauli.element(i) * scale);
  return OperatorBasis::build(std::move(name), std::move(elements));
}

OperatorBasis matrix_unit_basis(int d) {
  require(d >= 1, "invalid_basis", "dimension must be positive");
  std::vector<Mat> elements;
  elements.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      elements.push_back(std::move(e));
    }
  return OperatorBasis::build("unit" + std::to_string(d), std::move(elements));
}

OperatorBasis dual_basis(const OperatorBasis& basis) {
  std::vector<Mat> elements;
  elements.reserve(basis.size());
  for (Eigen::Index i = 0; i < basis.size(); ++i)
    elements.push_back(basis.dual(i));
  return OperatorBasis::build(basis.name() + "_dual", std::move(elements));
}

Ket haar_random_ket(int d, RandomStream& rng) {
  require(d >= 1, "invalid_dimension", "dimension must be positive");
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cxd(rng.normal(), rng.normal());
  const double n = v.norm();
  if (n == 0.0) return haar_random_ket(d, rng);  // probability zero
  return {v / n};
}

Eigen::Vector2cd AnalysisBasis::plus_ket() const {
  switch (kind) {
    case Kind::z: return pol_ket(Pol::H);
    case Kind::x: return pol_ket(Pol::D);
    case Kind::y: return pol_ket(Pol::R);
    case Kind::theta:
      return {inv_sqrt2, std::polar(inv_sqrt2, theta)};
  }
  fail_validation("invalid_setting", "unknown analysis basis");
}

Eigen::Vector2cd AnalysisBasis::minus_ket() const {
  switch (kind) {
    case Kind::z: return pol_ket(Pol::V);
    case Kind::x: return pol_ket(Pol::A);
    case Kind::y: return pol_ket(Pol::L);
    case Kind::theta:
      return {inv_sqrt2, -std::polar(inv_sqrt2, theta)};
  }
  fail_validation("invalid_setting", "unknown analysis basis");
}

std::string AnalysisBasis::label() const {
  switch (kind) {
    case Kind::z: return "Z";
    case Kind::x: return "X";
    case Kind::y: return "Y";
    case Kind::theta: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "P%.9g", theta);
      return buf;
    }
  }
  return "?";
}

AnalysisBasis AnalysisBasis::parse(std::string_view token) {
  require(!token.empty(), "invalid_setting", "empty setting token");
  if (token == "Z") return {Kind::z, 0.0};
  if (token == "X") return {Kind::x, 0.0};
  if (token == "Y") return {Kind::y, 0.0};
  if (token[0] == 'P') {
    AnalysisBasis b;
    b.kind = Kind::theta;
    b.theta = std::stod(std::string(token.substr(1)));
    return b;
  }
  fail_validation("invalid_setting",
                  "cannot parse setting token '" + std::string(token) + "'");
}

std::string setting_label(const std::vector<AnalysisBasis>& bases) {
  bool simple = true;
  for (const auto& b : bases)
    if (b.kind == AnalysisBasis::Kind::theta) simple = false;
  std::string out;
  for (size_t i = 0; i < bases.size(); ++i) {
    if (!simple && i > 0) out += ';';
    out += bases[i].label();
  }
  return out;
}

std::vector<AnalysisBasis> parse_setting_label(std::string_view label) {
  std::vector<AnalysisBasis> out;
  if (label.find(';') != std::string_view::npos) {
    size_t pos = 0;
    while (pos <= label.size()) {
      const size_t next = label.find(';', pos);
      const auto end = (next == std::string_view::npos) ? label.size() : next;
      out.push_back(AnalysisBasis::parse(label.substr(pos, end - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  } else {
    for (char c : label)
      out.push_back(AnalysisBasis::parse(std::string_view(&c, 1)));
  }
  return out;
}

}  // namespace pgate
