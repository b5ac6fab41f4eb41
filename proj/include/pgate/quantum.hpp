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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pgate/linalg.hpp"
#include "pgate/rng.hpp"

namespace pgate {

// ---------------------------------------------------------------------------
// Polarization conventions
// ---------------------------------------------------------------------------
// Single-photon states in the (|H>, |V>) computational basis:
//   |D> = (|H>+|V>)/sqrt2,  |A> = (|H>-|V>)/sqrt2,
//   |R> = (|H>-i|V>)/sqrt2, |L> = (|H>+i|V>)/sqrt2.
// Multi-photon labels are ordered tuples with the control photon first.
enum class Pol { H, V, D, A, R, L };

Eigen::Vector2cd pol_ket(Pol p);
char pol_char(Pol p);
Pol pol_from_char(char c);
std::vector<Pol> parse_pol_labels(std::string_view s);
std::string pol_string(const std::vector<Pol>& labels);

struct Ket {
  Vec amplitudes;

  double norm2() const { return amplitudes.squaredNorm(); }
  bool normalized(double tol = 1e-12) const {
    return std::abs(norm2() - 1.0) <= tol;
  }
};

// Tensor-product ket for a polarization label tuple, control first.
Ket polarization_ket(const std::vector<Pol>& labels);

struct DensityMatrix {
  Mat rho;

  static DensityMatrix from_ket(const Ket& k) {
    return {k.amplitudes * k.amplitudes.adjoint()};
  }
  double trace_real() const { return rho.trace().real(); }
  // Hermitian within 1e-10, eigenvalues >= -1e-10, trace in [0, 1 + 1e-10].
  void validate() const;
};

// ---------------------------------------------------------------------------
// Two-qubit gate unitaries
// ---------------------------------------------------------------------------

struct GateUnitary {
  Eigen::Matrix4cd u;
  void validate(double tol = 1e-12) const;
};

// Controlled pi-phase in the basis (HH, HV, VH, VV): diag(1, -1, 1, 1).
GateUnitary cphase_unitary();

// Single-qubit rotation exchanging the H/V and D/A bases; conjugating the
// target of the controlled-phase gate with it gives the controlled-NOT form
// in which control H flips the target.
Eigen::Matrix2cd cnot_basis_rotation();
GateUnitary cnot_equivalent_unitary();

// ---------------------------------------------------------------------------
// Operator bases
// ---------------------------------------------------------------------------

// d^2 operators spanning the d x d matrices, carried together with the metric
// g_ij = tr(A_i^dag A_j) and the dual elements A^j with tr(A_i^dag A^j) =
// delta_ij. Construction fails with "singular_metric" when the elements are
// linearly dependent (metric condition number above 1e12).
class OperatorBasis {
 public:
  static OperatorBasis build(std::string name, std::vector<Mat> elements);

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(elements_.size()); }
  const Mat& element(Eigen::Index i) const { return elements_[i]; }
  const Mat& dual(Eigen::Index i) const { return dual_[i]; }
  const Mat& metric() const { return metric_; }
  bool orthonormal() const { return orthonormal_; }

  // Expansion coefficients: B = sum_i element(i) * c_i with c_i computed
  // against the dual basis.
  Vec coefficients(const Mat& b) const;
  Mat reconstruct(const Vec& coeffs) const;

 private:
  std::string name_;
  Eigen::Index dim_ = 0;
  std::vector<Mat> elements_;
  std::vector<Mat> dual_;
  Mat metric_;
  bool orthonormal_ = false;
};

// The 4^n tensor products of (I, X, Y, Z), first factor varying slowest, so
// element 1 (0-based) of the two-qubit basis is I (x) X. The normalized
// variant divides every element by sqrt(2^n) and is orthonormal.
OperatorBasis pauli_product_basis(int n_qubits, bool normalized = true);

// Elements U * B_i * scale for the 16 two-qubit Pauli products B_i. With
// scale = 1/2 this is orthonormal and adapted to the gate U: the ideal
// process matrix is then delta_{1,i} delta_{1,j} * 4.
OperatorBasis gate_adapted_basis(const GateUnitary& u, double scale,
                                 std::string name);

// Matrix units |u_i><u_j| of the computational basis, flattened row-major in
// (i, j); orthonormal for any d.
OperatorBasis matrix_unit_basis(int d);

// Dual-basis construction for an arbitrary element list; thin wrapper kept
// for call sites that already hold an OperatorBasis.
OperatorBasis dual_basis(const OperatorBasis& basis);

// ---------------------------------------------------------------------------
// Haar sampling
// ---------------------------------------------------------------------------

// Normalized vector of independent standard complex Gaussians. This is
// exactly the uniform measure on state vectors and is deterministic for a
// given stream.
Ket haar_random_ket(int d, RandomStream& rng);

// ---------------------------------------------------------------------------
// Measurement bases
// ---------------------------------------------------------------------------

// Single-photon analysis setting. The Pauli settings measure the pairs
// Z: (H, V), X: (D, A), Y: (R, L), with "+" the first-listed state. The
// theta setting measures (|H> +- e^{i theta}|V>)/sqrt2.
struct AnalysisBasis {
  enum class Kind { z, x, y, theta };
  Kind kind = Kind::z;
  double theta = 0.0;

  Eigen::Vector2cd plus_ket() const;
  Eigen::Vector2cd minus_ket() const;
  // Sign relating (p+ - p-) to the Pauli expectation; -1 for Y because R is
  // the -1 eigenstate of sigma_y in these conventions.
  double pauli_sign() const { return kind == Kind::y ? -1.0 : 1.0; }
  std::string label() const;
  static AnalysisBasis parse(std::string_view token);
};

// Per-photon setting labels, e.g. "ZX" or "P0.5236;P0.5236".
std::string setting_label(const std::vector<AnalysisBasis>& bases);
std::vector<AnalysisBasis> parse_setting_label(std::string_view label);

}  // namespace pgate
