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

#include <Eigen/Dense>
#include <complex>

namespace pgate {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// tr(a^dag b), the Frobenius inner product.
inline cxd frob_inner(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace();
}

// Column-major stacking; tr(a^dag b) == vec(a)^dag vec(b).
inline Vec vec_of(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

inline Mat unvec(const Vec& v, Eigen::Index rows) {
  return Eigen::Map<const Mat>(v.data(), rows, v.size() / rows);
}

inline Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

inline double hermiticity_error(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(hermitian));
  return es.eigenvalues().minCoeff();
}

// Frobenius-nearest Hermitian PSD matrix, eigenvalue clipping with the trace
// rescaled back to the input trace.
inline Mat project_psd(const Mat& m) {
  const Mat h = hermitian_part(m);
  const double target_trace = h.trace().real();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  const double sum = vals.sum();
  if (sum > 0.0 && target_trace > 0.0) vals *= target_trace / sum;
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

inline double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / (s(s.size() - 1));
}

inline bool approx_equal(const Mat& a, const Mat& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace pgate
