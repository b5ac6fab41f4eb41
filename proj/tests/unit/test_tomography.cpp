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

#include <doctest.h>

#include "pgate/errors.hpp"
#include "pgate/tomography.hpp"

using namespace pgate;

namespace {

Mat random_complex(RandomStream& rng, int d) {
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cxd(rng.normal(), rng.normal());
  return m;
}

Mat random_unitary(RandomStream& rng, int d) {
  Eigen::HouseholderQR<Mat> qr(random_complex(rng, d));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

Mat random_density(RandomStream& rng, int d) {
  const Mat g = random_complex(rng, d);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Random completely positive, trace-decreasing channel as a Kraus set.
std::vector<Mat> random_kraus(RandomStream& rng, int d, int n_ops,
                              double survival) {
  std::vector<Mat> ops;
  Mat total = Mat::Zero(d, d);
  for (int k = 0; k < n_ops; ++k) {
    ops.push_back(random_complex(rng, d));
    total += ops.back().adjoint() * ops.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(total);
  const double scale = std::sqrt(survival / es.eigenvalues().maxCoeff());
  for (Mat& k : ops) k *= scale;
  return ops;
}

Mat apply_kraus(const std::vector<Mat>& ops, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& k : ops) out += k * rho * k.adjoint();
  return out;
}

std::vector<StatePair> pairs_for(const std::function<Mat(const Mat&)>& map) {
  std::vector<StatePair> pairs;
  for (const auto& labels : tomography_input_labels()) {
    const Mat rho =
        DensityMatrix::from_ket(polarization_ket(labels)).rho;
    pairs.emplace_back(rho, map(rho));
  }
  return pairs;
}

BasisPtr pauli2() {
  static const BasisPtr b =
      std::make_shared<const OperatorBasis>(pauli_product_basis(2, true));
  return b;
}

// The analysis basis adapted to the ideal gate: elements U B_i, whose halves
// are orthonormal.
BasisPtr gate_basis() {
  static const BasisPtr b = std::make_shared<const OperatorBasis>(
      gate_adapted_basis(cphase_unitary(), 1.0, "gate_adapted"));
  return b;
}

}  // namespace

TEST_CASE("beta tensor is self-inverse (one and two qubits)") {
  const auto b1 =
      std::make_shared<const OperatorBasis>(pauli_product_basis(1, true));
  const BetaTensor beta1 = beta_tensor(b1);
  CHECK((beta1.flat * beta1.flat - Mat::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  const BetaTensor beta2 = beta_tensor(pauli2());
  CHECK((beta2.flat * beta2.flat - Mat::Identity(256, 256))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("beta tensor self-inverse for rotated orthonormal bases") {
  RandomStream rng(2024);
  // Conjugation by a random unitary keeps the basis orthonormal.
  const Mat w = random_unitary(rng, 2);
  std::vector<Mat> conj_elems;
  const OperatorBasis pauli = pauli_product_basis(1, true);
  for (Eigen::Index i = 0; i < 16; ++i) {
    if (i < 4) conj_elems.push_back(w * pauli.element(i) * w.adjoint());
  }
  const auto rotated =
      std::make_shared<const OperatorBasis>(OperatorBasis::build(
          "rotated", conj_elems));
  CHECK(rotated->orthonormal());
  const BetaTensor beta = beta_tensor(rotated);
  CHECK((beta.flat * beta.flat - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() <
        1e-9);

  // Mixing with a random unitary matrix of coefficients also keeps it
  // orthonormal.
  const Mat q = random_unitary(rng, 4);
  std::vector<Mat> mixed(4, Mat::Zero(2, 2));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mixed[i] += pauli.element(j) * q(j, i);
  const auto mixed_basis = std::make_shared<const OperatorBasis>(
      OperatorBasis::build("mixed", mixed));
  CHECK(mixed_basis->orthonormal());
  const BetaTensor mbeta = beta_tensor(mixed_basis);
  CHECK((mbeta.flat * mbeta.flat - Mat::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("beta tensor refuses non-orthonormal bases") {
  const auto raw =
      std::make_shared<const OperatorBasis>(pauli_product_basis(2, false));
  CHECK_THROWS_WITH_AS(beta_tensor(raw),
                       doctest::Contains("non_orthonormal_basis"), Error);
}

TEST_CASE("superoperator from pairs: identity and unitary conjugation") {
  const auto id_pairs = pairs_for([](const Mat& rho) { return rho; });
  const SuperopMatrix m_id = superop_from_pairs(id_pairs, pauli2());
  CHECK((m_id.m - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-9);

  const GateUnitary cp = cphase_unitary();
  const auto cp_pairs = pairs_for(
      [&](const Mat& rho) { return Mat(cp.u * rho * cp.u.adjoint()); });
  const SuperopMatrix m_cp = superop_from_pairs(cp_pairs, pauli2());
  CHECK((m_cp.m.adjoint() * m_cp.m - Mat::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() < 1e-9);

  // Same representation from an orthogonal input set.
  RandomStream rng(5);
  std::vector<StatePair> ortho_pairs;
  const OperatorBasis units = matrix_unit_basis(4);
  for (Eigen::Index i = 0; i < 16; ++i) {
    const Mat rho = units.element(i);
    ortho_pairs.emplace_back(rho, Mat(cp.u * rho * cp.u.adjoint()));
  }
  const SuperopMatrix m_cp2 = superop_from_pairs(ortho_pairs, pauli2());
  CHECK((m_cp.m - m_cp2.m).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("superoperator from pairs rejects a degenerate input set") {
  std::vector<StatePair> pairs;
  const Mat rho = DensityMatrix::from_ket(polarization_ket({Pol::H, Pol::H})).rho;
  for (int i = 0; i < 16; ++i) pairs.emplace_back(rho, rho);
  CHECK_THROWS_WITH_AS(superop_from_pairs(pairs, pauli2()),
                       doctest::Contains("singular_input_set"), Error);
}

TEST_CASE("chi of the identity map has a single element d") {
  const auto id_pairs = pairs_for([](const Mat& rho) { return rho; });
  const SuperopMatrix m = superop_from_pairs(id_pairs, pauli2());
  const BetaTensor beta = beta_tensor(pauli2());
  const ProcessMatrix chi = chi_from_superop(m, beta);
  CHECK(std::abs(chi.chi(0, 0) - cxd(4.0, 0.0)) < 1e-9);
  Mat rest = chi.chi;
  rest(0, 0) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("ideal gate chi is a single unit element in the adapted basis") {
  const GateUnitary cp = cphase_unitary();
  const auto cp_pairs = pairs_for(
      [&](const Mat& rho) { return Mat(cp.u * rho * cp.u.adjoint()); });
  const SuperopMatrix m = superop_from_pairs(cp_pairs, pauli2());
  const ProcessMatrix chi = chi_from_superop(m, beta_tensor(pauli2()));

  const ProcessMatrix adapted = change_chi_basis(chi, gate_basis());
  CHECK(std::abs(adapted.chi(0, 0) - cxd(1.0, 0.0)) < 1e-10);
  Mat rest = adapted.chi;
  rest(0, 0) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() < 1e-10);

  // Round trip back to the Pauli representation.
  const ProcessMatrix back = change_chi_basis(adapted, pauli2());
  CHECK((back.chi - chi.chi).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("chi round trip reproduces an arbitrary linear map") {
  RandomStream rng(31);
  const auto kraus = random_kraus(rng, 4, 3, 0.7);
  const auto pairs =
      pairs_for([&](const Mat& rho) { return apply_kraus(kraus, rho); });
  const SuperopMatrix m = superop_from_pairs(pairs, pauli2());
  const BetaTensor beta = beta_tensor(pauli2());
  const ProcessMatrix chi = chi_from_superop(m, beta);

  for (int t = 0; t < 100; ++t) {
    const Mat rho = random_density(rng, 4);
    const Mat direct = apply_kraus(kraus, rho);
    const Mat via_chi = apply_process(chi, rho);
    CHECK((direct - via_chi).cwiseAbs().maxCoeff() < 1e-8);
  }

  // M -> chi -> M is the identity.
  const SuperopMatrix m_back = superop_from_chi(chi, beta);
  CHECK((m_back.m - m.m).cwiseAbs().maxCoeff() < 1e-9);

  // Basis change leaves the represented map untouched.
  const ProcessMatrix chi2 = change_chi_basis(chi, gate_basis());
  for (int t = 0; t < 20; ++t) {
    const Mat rho = random_density(rng, 4);
    CHECK((apply_process(chi, rho) - apply_process(chi2, rho))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }
}

TEST_CASE("postselection normalizes the trace and reports the efficiency") {
  // Lossless ideal gate.
  const GateUnitary cp = cphase_unitary();
  const auto cp_pairs = pairs_for(
      [&](const Mat& rho) { return Mat(cp.u * rho * cp.u.adjoint()); });
  const ProcessMatrix chi = chi_from_superop(
      superop_from_pairs(cp_pairs, pauli2()), beta_tensor(pauli2()));
  const auto [chi_ps, eta] = postselect_chi(chi);
  CHECK(eta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((chi_ps.chi - chi.chi).cwiseAbs().maxCoeff() < 1e-9);
  CHECK_THROWS_WITH_AS(postselect_chi(chi_ps),
                       doctest::Contains("already_postselected"), Error);

  // Diagonal loss with the measured basis-state efficiencies.
  const Eigen::Vector4d etas(0.351, 0.157, 0.611, 0.549);
  const auto lossy = pairs_for([&](const Mat& rho) {
    Mat out = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out(i, j) = std::sqrt(etas(i) * etas(j)) * rho(i, j) *
                    (((i == 1) != (j == 1)) ? -1.0 : 1.0);
    return out;
  });
  const ProcessMatrix chi_lossy = chi_from_superop(
      superop_from_pairs(lossy, pauli2()), beta_tensor(pauli2()));
  const auto [ps, eta_bar] = postselect_chi(chi_lossy);
  CHECK(eta_bar == doctest::Approx(0.417).epsilon(1e-9));
  CHECK(ps.chi.trace().real() == doctest::Approx(4.0).epsilon(1e-9));

  // Uniform 50% loss.
  const auto half = pairs_for([](const Mat& rho) { return Mat(0.5 * rho); });
  const ProcessMatrix chi_half = chi_from_superop(
      superop_from_pairs(half, pauli2()), beta_tensor(pauli2()));
  CHECK(postselect_chi(chi_half).second == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("process fidelity: ideal, depolarizing, and the CP bound") {
  const GateUnitary cp = cphase_unitary();
  const auto cp_pairs = pairs_for(
      [&](const Mat& rho) { return Mat(cp.u * rho * cp.u.adjoint()); });
  const auto [ideal_ps, eta1] = postselect_chi(chi_from_superop(
      superop_from_pairs(cp_pairs, pauli2()), beta_tensor(pauli2())));
  CHECK(process_fidelity(ideal_ps, cp) == doctest::Approx(1.0).epsilon(1e-9));

  // In the gate-adapted basis the fidelity is the corner element.
  const ProcessMatrix adapted = change_chi_basis(ideal_ps, gate_basis());
  CHECK(process_fidelity(ideal_ps, cp) ==
        doctest::Approx(adapted.chi(0, 0).real()).epsilon(1e-9));

  // Fully depolarizing channel.
  const auto depol = pairs_for([](const Mat& rho) {
    return Mat(rho.trace() * Mat::Identity(4, 4) / 4.0);
  });
  const auto [depol_ps, eta2] = postselect_chi(chi_from_superop(
      superop_from_pairs(depol, pauli2()), beta_tensor(pauli2())));
  CHECK(process_fidelity(depol_ps, cp) ==
        doctest::Approx(1.0 / 16.0).epsilon(1e-8));

  // Random CP channels never exceed fidelity one.
  RandomStream rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto kraus = random_kraus(rng, 4, 2 + (t % 3), 0.2 + 0.04 * t);
    const auto pairs =
        pairs_for([&](const Mat& rho) { return apply_kraus(kraus, rho); });
    const auto [ps, eta] = postselect_chi(chi_from_superop(
        superop_from_pairs(pairs, pauli2()), beta_tensor(pauli2())));
    ps.validate();
    CHECK(process_fidelity(ps, cp) <= 1.0 + 1e-6);
  }
}

TEST_CASE("efficiency matrix from chi and from measurements") {
  // Lossless channel: identity.
  const GateUnitary cp = cphase_unitary();
  const auto cp_pairs = pairs_for(
      [&](const Mat& rho) { return Mat(cp.u * rho * cp.u.adjoint()); });
  const ProcessMatrix chi = chi_from_superop(
      superop_from_pairs(cp_pairs, pauli2()), beta_tensor(pauli2()));
  const EfficiencyMatrix theta = efficiency_matrix_from_chi(chi);
  theta.validate();
  CHECK((theta.theta - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);

  // Diagonal chi model in the matrix-unit basis gives a diagonal Theta with
  // the basis-state efficiencies.
  const Eigen::Vector4d etas(0.351, 0.157, 0.611, 0.549);
  const auto units = std::make_shared<const OperatorBasis>(matrix_unit_basis(4));
  ProcessMatrix diag_chi;
  diag_chi.basis = units;
  diag_chi.chi = Mat::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      diag_chi.chi(4 * i + i, 4 * k + k) =
          std::sqrt(etas(i) * etas(k)) * (((i == 1) != (k == 1)) ? -1.0 : 1.0);
  const EfficiencyMatrix theta2 = efficiency_matrix_from_chi(diag_chi);
  for (int i = 0; i < 4; ++i)
    CHECK(theta2.theta(i, i).real() == doctest::Approx(etas(i)).epsilon(1e-9));
  CHECK(average_efficiency(theta2) == doctest::Approx(0.417).epsilon(1e-9));

  // eta(rho) = tr(Theta rho) reproduces the channel's survival probability.
  RandomStream rng(13);
  for (int t = 0; t < 100; ++t) {
    const Mat rho = random_density(rng, 4);
    const double direct = apply_process(diag_chi, rho).trace().real();
    const double via = (theta2.theta.adjoint() * rho).trace().real();
    CHECK(std::abs(direct - via) < 1e-8);
  }

  // Hidden-matrix round trip on the non-orthogonal product inputs.
  Mat hidden = Mat::Zero(4, 4);
  {
    Mat g = random_complex(rng, 4);
    Eigen::SelfAdjointEigenSolver<Mat> es(g * g.adjoint());
    Eigen::VectorXd vals = es.eigenvalues();
    vals = vals / vals.maxCoeff();  // eigenvalues in (0, 1]
    hidden = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  }
  std::vector<std::pair<Mat, double>> measured;
  for (const auto& labels : tomography_input_labels()) {
    const Mat rho = DensityMatrix::from_ket(polarization_ket(labels)).rho;
    measured.emplace_back(rho, (hidden.adjoint() * rho).trace().real());
  }
  const EfficiencyMatrix rebuilt = efficiency_matrix_from_measurements(measured);
  CHECK((rebuilt.theta - hidden).cwiseAbs().maxCoeff() < 1e-9);

  // Degenerate measurement set.
  std::vector<std::pair<Mat, double>> degenerate(
      16, {Mat::Identity(4, 4), 1.0});
  CHECK_THROWS_WITH_AS(efficiency_matrix_from_measurements(degenerate),
                       doctest::Contains("singular_input_set"), Error);
}

TEST_CASE("efficiency averages") {
  EfficiencyMatrix theta;
  theta.theta = Eigen::Vector4cd(0.351, 0.157, 0.611, 0.549).asDiagonal();
  CHECK(average_efficiency(theta) == doctest::Approx(0.417).epsilon(1e-12));

  theta.theta = Eigen::Vector4cd(0.382, 0.244, 0.611, 0.344).asDiagonal();
  CHECK(average_efficiency(theta) == doctest::Approx(0.39525).epsilon(1e-12));

  CHECK(harmonic_mean_efficiency({0.077, 0.023, 0.015, 0.0045}) ==
        doctest::Approx(0.0115823).epsilon(1e-4));
  CHECK_THROWS_WITH_AS(harmonic_mean_efficiency({0.1, 0.0}),
                       doctest::Contains("zero_efficiency"), Error);
}

TEST_CASE("average efficiency is basis independent and matches Haar sampling") {
  RandomStream rng(99);
  Mat g = random_complex(rng, 4);
  Eigen::SelfAdjointEigenSolver<Mat> es(g * g.adjoint());
  Eigen::VectorXd vals = es.eigenvalues() / es.eigenvalues().maxCoeff();
  const Mat theta =
      es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  const double eta_bar = theta.trace().real() / 4.0;

  // Identical arithmetic mean over any orthonormal ket basis.
  for (int trial = 0; trial < 10; ++trial) {
    const Mat u = random_unitary(rng, 4);
    double mean = 0.0;
    for (int i = 0; i < 4; ++i) {
      const Vec v = u.col(i);
      mean += (v.adjoint() * theta * v)(0, 0).real();
    }
    mean /= 4.0;
    CHECK(std::abs(mean - eta_bar) < 1e-10);
  }

  // Haar Monte Carlo converges to the same number (four standard errors).
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Ket k = haar_random_ket(4, rng);
    const double e = (k.amplitudes.adjoint() * theta * k.amplitudes)(0, 0).real();
    sum += e;
    sumsq += e * e;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK(std::abs(mean - eta_bar) < 4.0 * se);
}

namespace {

// Exact postselected outcome distribution of an ideal entangling operation,
// packed as noiseless counts.
CountsTable ideal_bell_counts(std::uint64_t invocations_per_setting) {
  const GateUnitary cp = cphase_unitary();
  const Vec out = cp.u * polarization_ket({Pol::D, Pol::D}).amplitudes;
  CountsTable table;
  const char* letters = "ZXY";
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const AnalysisBasis ba =
          AnalysisBasis::parse(std::string_view(&letters[a], 1));
      const AnalysisBasis bb =
          AnalysisBasis::parse(std::string_view(&letters[b], 1));
      CountsCell& cell =
          table.cell("DD", std::string(1, letters[a]) + letters[b]);
      cell.invocations = invocations_per_setting;
      const Eigen::Vector2cd kets_a[2] = {ba.plus_ket(), ba.minus_ket()};
      const Eigen::Vector2cd kets_b[2] = {bb.plus_ket(), bb.minus_ket()};
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
          cxd amp = 0.0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              amp += std::conj(kets_a[sa](i) * kets_b[sb](j)) * out(2 * i + j);
          const double p = std::norm(amp);
          const auto c = static_cast<std::uint64_t>(
              std::llround(p * static_cast<double>(invocations_per_setting)));
          if (c > 0)
            cell.counts[std::string(1, "+-"[sa]) + "+-"[sb]] = c;
        }
    }
  return table;
}

}  // namespace

TEST_CASE("state tomography recovers the ideal entangled state") {
  const CountsTable counts = ideal_bell_counts(1000000 / 9);
  TomoCalibration calib;  // eta_d = 1, deterministic source
  const DensityMatrix rho = state_tomography(
      tomography_slice(counts, "DD"), calib);
  rho.validate();
  CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-3));

  Vec bell(4);
  bell << 0.5, -0.5, 0.5, 0.5;
  const Mat rho_ps = rho.rho / rho.trace_real();
  const double fid = (bell.adjoint() * rho_ps * bell)(0, 0).real();
  CHECK(fid > 0.995);
}

TEST_CASE("state tomography demands every analysis setting") {
  CountsTable counts = ideal_bell_counts(1000);
  counts.cells.erase({"DD", "XY"});
  TomoCalibration calib;
  CHECK_THROWS_WITH_AS(
      state_tomography(tomography_slice(counts, "DD"), calib),
      doctest::Contains("missing_setting"), Error);
}

TEST_CASE("bootstrap spread shrinks with count size") {
  const CountsTable big = ideal_bell_counts(200000);
  const CountsTable small = ideal_bell_counts(2000);
  const auto statistic = [](const CountsTable& t) {
    TomoCalibration calib;
    const DensityMatrix rho = state_tomography(tomography_slice(t, "DD"), calib);
    Vec bell(4);
    bell << 0.5, -0.5, 0.5, 0.5;
    const Mat rho_ps = rho.rho / rho.trace_real();
    return (bell.adjoint() * rho_ps * bell)(0, 0).real();
  };
  const auto est_big = bootstrap_counts_statistic(big, 60, 11, statistic);
  const auto est_small = bootstrap_counts_statistic(small, 60, 11, statistic);
  CHECK(est_big.stddev < est_small.stddev);
  CHECK(est_big.stddev < 0.01);
}
