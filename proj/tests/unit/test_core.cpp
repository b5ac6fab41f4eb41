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
#include "pgate/quantum.hpp"

using namespace pgate;

TEST_CASE("polarization kets follow the stated conventions") {
  const auto d = pol_ket(Pol::D);
  CHECK(std::abs(d(0) - cxd(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK(std::abs(d(1) - cxd(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);

  const auto h = pol_ket(Pol::H);
  CHECK(h(0) == cxd(1.0, 0.0));
  CHECK(h(1) == cxd(0.0, 0.0));

  const auto r = pol_ket(Pol::R);
  CHECK(std::abs(r(1) - cxd(0.0, -1.0 / std::sqrt(2.0))) < 1e-15);
  const auto l = pol_ket(Pol::L);
  CHECK(std::abs(l(1) - cxd(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);

  // (D, D) tensor product
  const Ket dd = polarization_ket({Pol::D, Pol::D});
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(dd.amplitudes(i) - cxd(0.5, 0.0)) < 1e-15);
  CHECK(dd.normalized());
}

TEST_CASE("basis pairs are exactly orthogonal") {
  const std::pair<Pol, Pol> pairs[] = {
      {Pol::H, Pol::V}, {Pol::D, Pol::A}, {Pol::R, Pol::L}};
  for (const auto& [a, b] : pairs) {
    const cxd ip = pol_ket(a).adjoint() * pol_ket(b);
    CHECK(ip == cxd(0.0, 0.0));
  }
}

TEST_CASE("label parsing round trips, control first") {
  const auto labels = parse_pol_labels("HRDV");
  CHECK(labels.size() == 4);
  CHECK(labels[0] == Pol::H);
  CHECK(labels[1] == Pol::R);
  CHECK(pol_string(labels) == "HRDV");
  CHECK_THROWS_AS(parse_pol_labels("HQ"), Error);
}

TEST_CASE("controlled-phase gate flips exactly one basis state") {
  const GateUnitary cp = cphase_unitary();
  cp.validate();

  const Ket hv = polarization_ket({Pol::H, Pol::V});
  const Vec out = cp.u * hv.amplitudes;
  CHECK(std::abs(out(1) + 1.0) < 1e-15);  // e^{i pi} amplitude

  const Ket vv = polarization_ket({Pol::V, Pol::V});
  CHECK((cp.u * vv.amplitudes - vv.amplitudes).norm() < 1e-15);

  // Double application is the identity.
  CHECK((cp.u * cp.u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("entangling action on the double-diagonal input") {
  const GateUnitary cp = cphase_unitary();
  const Ket dd = polarization_ket({Pol::D, Pol::D});
  const Vec out = cp.u * dd.amplitudes;
  Vec bell(4);
  bell << 0.5, -0.5, 0.5, 0.5;
  CHECK(std::abs(std::abs(bell.adjoint().dot(out)) - 1.0) < 1e-12);
}

TEST_CASE("flip-form gate: control H flips the target between D and A") {
  const GateUnitary cx = cnot_equivalent_unitary();
  cx.validate();
  CHECK((cx.u * cx.u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
        1e-14);

  const Ket hd = polarization_ket({Pol::H, Pol::D});
  const Ket ha = polarization_ket({Pol::H, Pol::A});
  CHECK(std::abs(std::abs(ha.amplitudes.adjoint().dot(cx.u * hd.amplitudes)) -
                 1.0) < 1e-12);
  const Ket vd = polarization_ket({Pol::V, Pol::D});
  CHECK(std::abs(std::abs(vd.amplitudes.adjoint().dot(cx.u * vd.amplitudes)) -
                 1.0) < 1e-12);

  // The exposed rotation conjugates the phase form into the flip form.
  const Eigen::Matrix2cd w = cnot_basis_rotation();
  Eigen::Matrix4cd iw = Eigen::Matrix4cd::Zero();
  iw.block<2, 2>(0, 0) = w;
  iw.block<2, 2>(2, 2) = w;
  CHECK((iw * cphase_unitary().u * iw.adjoint() - cx.u).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("Pauli product basis ordering and normalization") {
  const OperatorBasis basis = pauli_product_basis(2, true);
  CHECK(basis.size() == 16);
  CHECK(basis.orthonormal());
  CHECK((basis.metric() - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);

  // Element 1 (0-based) is I (x) X, scaled by 1/2.
  Mat ix = Mat::Zero(4, 4);
  ix(0, 1) = ix(1, 0) = ix(2, 3) = ix(3, 2) = 0.5;
  CHECK(approx_equal(basis.element(1), ix, 1e-15));

  const OperatorBasis raw = pauli_product_basis(1, false);
  CHECK(std::abs(frob_inner(raw.element(1), raw.element(1)) - cxd(2.0, 0.0)) <
        1e-15);
}

TEST_CASE("dual basis: orthonormal basis is self-dual") {
  const OperatorBasis basis = pauli_product_basis(2, true);
  for (Eigen::Index i = 0; i < basis.size(); ++i)
    CHECK(approx_equal(basis.dual(i), basis.element(i), 1e-10));
}

TEST_CASE("dual basis of the non-orthogonal product-state inputs") {
  // Single-qubit projectors of H, V, D, R form a (non-orthogonal) basis.
  std::vector<Mat> elements;
  for (Pol p : {Pol::H, Pol::V, Pol::D, Pol::R}) {
    const auto k = pol_ket(p);
    elements.push_back(Mat(k * k.adjoint()));
  }
  const OperatorBasis basis = OperatorBasis::build("hvdr", elements);
  CHECK_FALSE(basis.orthonormal());

  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const cxd v = frob_inner(basis.element(i), basis.dual(j));
      CHECK(std::abs(v - (i == j ? cxd(1) : cxd(0))) < 1e-10);
    }

  // Reconstruction identity on random operators.
  RandomStream rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Mat b(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) b(r, c) = cxd(rng.normal(), rng.normal());
    Mat rebuilt = Mat::Zero(2, 2);
    for (Eigen::Index j = 0; j < 4; ++j)
      rebuilt += basis.dual(j) * frob_inner(basis.element(j), b);
    CHECK((rebuilt - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("linearly dependent operator set is rejected") {
  std::vector<Mat> elements;
  const OperatorBasis pauli = pauli_product_basis(1, true);
  for (int i = 0; i < 3; ++i) elements.push_back(pauli.element(i));
  elements.push_back(pauli.element(2));  // duplicate
  CHECK_THROWS_WITH_AS(OperatorBasis::build("bad", elements),
                       doctest::Contains("singular_metric"), Error);
}

TEST_CASE("Haar sampling: moments, dimension one, determinism") {
  RandomStream rng(12345);
  const int n = 100000;
  Mat acc = Mat::Zero(4, 4);
  for (int i = 0; i < n; ++i) {
    const Ket k = haar_random_ket(4, rng);
    CHECK(k.normalized(1e-12));
    acc += k.amplitudes * k.amplitudes.adjoint();
  }
  acc /= n;
  // Each entry of |psi><psi| has std <= 1 sample-wise; three standard errors
  // of the mean with n draws.
  const double tol = 3.0 / std::sqrt(static_cast<double>(n));
  CHECK((acc - Mat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < tol);

  RandomStream r1(99);
  const Ket one = haar_random_ket(1, r1);
  CHECK(std::abs(std::abs(one.amplitudes(0)) - 1.0) < 1e-12);

  RandomStream a(4242), b(4242);
  for (int i = 0; i < 10; ++i) {
    const Ket ka = haar_random_ket(3, a);
    const Ket kb = haar_random_ket(3, b);
    CHECK((ka.amplitudes - kb.amplitudes).norm() == 0.0);
  }
}

TEST_CASE("stream seeding is stable and substreams differ") {
  RandomStream s1(1), s2(2);
  CHECK(s1.next_u64() != s2.next_u64());
  CHECK(derive_seed(10, 0, 0) != derive_seed(10, 1, 0));
  CHECK(derive_seed(10, 0, 0) != derive_seed(10, 0, 1));
  CHECK(derive_seed(10, 3, 4) == derive_seed(10, 3, 4));
}

TEST_CASE("analysis basis labels round trip") {
  const std::vector<AnalysisBasis> bases = {
      {AnalysisBasis::Kind::z, 0.0},
      {AnalysisBasis::Kind::x, 0.0},
      {AnalysisBasis::Kind::y, 0.0}};
  CHECK(setting_label(bases) == "ZXY");
  const auto parsed = parse_setting_label("ZXY");
  CHECK(parsed.size() == 3);
  CHECK(parsed[1].kind == AnalysisBasis::Kind::x);

  const std::vector<AnalysisBasis> thetas = {
      {AnalysisBasis::Kind::theta, 0.5},
      {AnalysisBasis::Kind::theta, 0.5}};
  const auto label = setting_label(thetas);
  const auto back = parse_setting_label(label);
  CHECK(back.size() == 2);
  CHECK(back[0].theta == doctest::Approx(0.5).epsilon(1e-9));

  // X plus/minus are D/A; Y plus is R.
  CHECK((AnalysisBasis{AnalysisBasis::Kind::x, 0.0}.plus_ket() -
         pol_ket(Pol::D)).norm() < 1e-15);
  CHECK((AnalysisBasis{AnalysisBasis::Kind::y, 0.0}.plus_ket() -
         pol_ket(Pol::R)).norm() < 1e-15);
  // theta = 0 reproduces the X pair.
  CHECK((AnalysisBasis{AnalysisBasis::Kind::theta, 0.0}.minus_ket() -
         pol_ket(Pol::A)).norm() < 1e-15);
}
