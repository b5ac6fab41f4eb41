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

#include "pgate/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "pgate/errors.hpp"

namespace pgate {

ProcessMatrix::Diagnostics ProcessMatrix::diagnostics() const {
  return {hermiticity_error(chi), min_eigenvalue(chi), chi.trace().real()};
}

void ProcessMatrix::validate() const {
  const Diagnostics d = diagnostics();
  if (d.hermiticity_error > 1e-8)
    fail_numerical("not_hermitian", "process matrix is not Hermitian");
  if (d.min_eigenvalue < -1e-6)
    fail_numerical("not_cp", "process matrix violates complete positivity");
  if (postselected && basis->orthonormal() && std::abs(d.trace_real - 4.0) > 1e-8)
    fail_numerical("bad_trace",
                   "postselected chi should have trace d in an orthonormal basis");
}

void EfficiencyMatrix::validate() const {
  if (hermiticity_error(theta) > 1e-8)
    fail_numerical("not_hermitian", "efficiency matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(theta));
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < -1e-6 || hi > 1.0 + 1e-6)
    fail_numerical("bad_efficiency",
                   "efficiency matrix eigenvalues outside [0, 1]");
}

SuperopMatrix superop_from_pairs(const std::vector<StatePair>& pairs,
                                 BasisPtr basis) {
  const Eigen::Index n = basis->size();
  const Eigen::Index d = basis->dim();
  require(static_cast<Eigen::Index>(pairs.size()) >= n, "singular_input_set",
          "need at least d^2 input/output pairs");

  Mat p(d * d, pairs.size()), s(d * d, pairs.size());
  for (size_t k = 0; k < pairs.size(); ++k) {
    p.col(k) = vec_of(pairs[k].first);
    s.col(k) = vec_of(pairs[k].second);
  }
  Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > 0.0) || sv(0) / sv(n - 1) >= 1e12)
    fail_numerical("singular_input_set",
                   "input states do not span operator space");

  // L acts on vectorized operators: vec(rho_out) = L vec(rho_in).
  const Mat l = s * svd.solve(Mat::Identity(d * d, d * d));

  SuperopMatrix out;
  out.basis = basis;
  out.m.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec ej = l * vec_of(basis->element(j));
    for (Eigen::Index i = 0; i < n; ++i)
      out.m(i, j) = vec_of(basis->dual(i)).dot(ej);
  }
  return out;
}

BetaTensor beta_tensor(BasisPtr basis) {
  require(basis->orthonormal(), "non_orthonormal_basis",
          "the trace shortcut needs an orthonormal basis");
  const Eigen::Index n = basis->size();
  const Eigen::Index d = basis->dim();

  std::vector<Mat> left(n * n), right(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      left[i * n + k] = basis->element(i).adjoint() * basis->element(k);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l)
      right[j * n + l] = basis->element(j) * basis->element(l).adjoint();

  BetaTensor beta;
  beta.basis = basis;
  beta.flat.resize(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          const Mat& a = left[i * n + k];
          const Mat& b = right[j * n + l];
          cxd tr = 0.0;
          for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) tr += a(r, c) * b(c, r);
          beta.flat(i * n + j, k * n + l) = tr;
        }
  return beta;
}

namespace {

Vec flatten_row_major(const Mat& m) {
  const Eigen::Index n = m.rows();
  Vec v(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = m(i, j);
  return v;
}

Mat unflatten_row_major(const Vec& v, Eigen::Index n) {
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

void check_same_basis(const BasisPtr& a, const BasisPtr& b) {
  require(a && b, "basis_mismatch", "missing operator basis");
  require(a->name() == b->name() && a->dim() == b->dim(), "basis_mismatch",
          "representations use different operator bases: " + a->name() +
              " vs " + b->name());
}

}  // namespace

ProcessMatrix chi_from_superop(const SuperopMatrix& m, const BetaTensor& beta) {
  check_same_basis(m.basis, beta.basis);
  ProcessMatrix chi;
  chi.basis = m.basis;
  chi.chi = unflatten_row_major(beta.flat * flatten_row_major(m.m), m.basis->size());
  return chi;
}

SuperopMatrix superop_from_chi(const ProcessMatrix& chi, const BetaTensor& beta) {
  check_same_basis(chi.basis, beta.basis);
  SuperopMatrix m;
  m.basis = chi.basis;
  m.m = unflatten_row_major(beta.flat * flatten_row_major(chi.chi),
                            chi.basis->size());
  return m;
}

ProcessMatrix change_chi_basis(const ProcessMatrix& chi, BasisPtr to) {
  require(chi.basis && to, "basis_mismatch", "missing operator basis");
  require(chi.basis->dim() == to->dim(), "dimension_mismatch",
          "bases act on different dimensions");
  const Eigen::Index n = to->size();
  // Coordinates of the source elements in the target basis.
  Mat c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec coeff = to->coefficients(chi.basis->element(i));
    c.col(i) = coeff;
  }
  ProcessMatrix out;
  out.basis = std::move(to);
  out.postselected = chi.postselected;
  out.chi = c * chi.chi * c.adjoint();
  return out;
}

Mat apply_process(const ProcessMatrix& chi, const Mat& rho) {
  const Eigen::Index n = chi.basis->size();
  const Eigen::Index d = chi.basis->dim();
  std::vector<Mat> a_rho(n);
  for (Eigen::Index i = 0; i < n; ++i)
    a_rho[i] = chi.basis->element(i) * rho;
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    Mat inner = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) inner += chi.chi(i, j) * a_rho[i];
    out += inner * chi.basis->element(j).adjoint();
  }
  return out;
}

std::pair<ProcessMatrix, double> postselect_chi(const ProcessMatrix& chi) {
  require(!chi.postselected, "already_postselected",
          "channel is already postselected");
  const EfficiencyMatrix theta = efficiency_matrix_from_chi(chi);
  const double eta_bar = average_efficiency(theta);
  if (!(eta_bar > 1e-300))
    fail_numerical("zero_trace", "no surviving events to postselect on");
  ProcessMatrix out = chi;
  out.chi /= eta_bar;
  out.postselected = true;
  return {out, eta_bar};
}

double process_fidelity(const ProcessMatrix& chi_ps, const GateUnitary& ideal) {
  require(chi_ps.postselected, "not_postselected",
          "process fidelity is defined on the postselected channel");
  const Eigen::Index d = chi_ps.basis->dim();
  require(d == 4, "dimension_mismatch", "two-qubit channels only");
  // Basis-independent form: average of tr([U E U^dag]^dag E(E)) over an
  // orthonormal operator basis.
  double f = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      const Mat ideal_out = ideal.u * e * ideal.u.adjoint();
      f += frob_inner(ideal_out, apply_process(chi_ps, e)).real();
    }
  return f / static_cast<double>(d * d);
}

EfficiencyMatrix efficiency_matrix_from_chi(const ProcessMatrix& chi) {
  const Eigen::Index n = chi.basis->size();
  const Eigen::Index d = chi.basis->dim();
  Mat theta = Mat::Zero(d, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    Mat inner = Mat::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i)
      inner += chi.chi(i, j) * chi.basis->element(i);
    theta += chi.basis->element(j).adjoint() * inner;
  }
  return {theta};
}

EfficiencyMatrix efficiency_matrix_from_measurements(
    const std::vector<std::pair<Mat, double>>& values) {
  require(!values.empty(), "singular_input_set", "no measurements given");
  std::vector<Mat> elements;
  elements.reserve(values.size());
  for (const auto& [a, _] : values) elements.push_back(a);
  OperatorBasis basis = [&] {
    try {
      return OperatorBasis::build("efficiency_inputs", std::move(elements));
    } catch (const Error& e) {
      if (e.code() == "singular_metric" || e.code() == "invalid_basis")
        fail_numerical("singular_input_set",
                       "measurement operators do not span operator space");
      throw;
    }
  }();
  Mat theta = Mat::Zero(basis.dim(), basis.dim());
  for (Eigen::Index j = 0; j < basis.size(); ++j)
    theta += basis.dual(j) * values[j].second;
  return {theta};
}

double harmonic_mean_efficiency(const std::vector<double>& etas) {
  require(!etas.empty(), "zero_efficiency", "no efficiencies given");
  double acc = 0.0;
  for (double e : etas) {
    if (!(e > 0.0))
      fail_validation("zero_efficiency",
                      "harmonic mean needs strictly positive efficiencies");
    acc += 1.0 / e;
  }
  return static_cast<double>(etas.size()) / acc;
}

// ---------------------------------------------------------------------------
// State tomography
// ---------------------------------------------------------------------------

double TomoCalibration::expected_fraction(int n_photons) const {
  double f = std::pow(eta_d, n_photons);
  if (poissonian) {
    require(static_cast<int>(nbar.size()) == n_photons, "invalid_calibration",
            "need one mean photon number per photon");
    for (double n : nbar) f *= n * std::exp(-n);
  }
  return f;
}

namespace {

const char kSettingLetters[3] = {'Z', 'X', 'Y'};

void enumerate_settings(int n, std::vector<std::string>& out) {
  out.clear();
  const int total = static_cast<int>(std::pow(3.0, n));
  for (int s = 0; s < total; ++s) {
    std::string label(n, 'Z');
    int rem = s;
    for (int k = n - 1; k >= 0; --k) {
      label[k] = kSettingLetters[rem % 3];
      rem /= 3;
    }
    out.push_back(std::move(label));
  }
}

Mat pauli_for(char letter_or_id) {
  Mat m(2, 2);
  switch (letter_or_id) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: fail_validation("invalid_setting", "unknown Pauli letter");
  }
  return m;
}

// Sign relating (p+ - p-) in a setting letter to the Pauli expectation value.
double letter_sign(char c) { return c == 'Y' ? -1.0 : 1.0; }

}  // namespace

DensityMatrix state_tomography(
    const std::map<std::string, const CountsCell*>& slice,
    const TomoCalibration& calibration) {
  require(!slice.empty(), "missing_setting", "no analysis settings present");
  const int n = static_cast<int>(slice.begin()->first.size());
  require(n >= 1 && n <= 10, "invalid_setting", "unsupported photon number");

  std::vector<std::string> settings;
  enumerate_settings(n, settings);
  for (const auto& s : settings)
    require(slice.count(s) && slice.at(s) != nullptr, "missing_setting",
            "analysis setting " + s + " is missing");

  // Conditional outcome distributions per setting.
  std::map<std::string, std::map<std::string, double>> probs;
  double total_counts = 0.0, total_expected = 0.0;
  for (const auto& s : settings) {
    const CountsCell& cell = *slice.at(s);
    const double tot = static_cast<double>(cell.total());
    if (!(tot > 0.0))
      fail_validation("empty_counts", "no events in setting " + s);
    for (const auto& [outcome, c] : cell.counts) {
      require(static_cast<int>(outcome.size()) == n, "invalid_counts",
              "outcome length does not match setting " + s);
      probs[s][outcome] = static_cast<double>(c) / tot;
    }
    total_counts += tot;
    total_expected += static_cast<double>(cell.invocations) *
                      calibration.expected_fraction(n);
  }
  require(total_expected > 0.0, "invalid_calibration",
          "expected event count vanishes");
  const double trace_scale = total_counts / total_expected;

  // Pauli moments; each is averaged over all compatible settings.
  const int dim = 1 << n;
  const int n_idx = 1 << (2 * n);  // 4^n multi-indices
  Mat rho = Mat::Zero(dim, dim);
  for (int idx = 0; idx < n_idx; ++idx) {
    std::string letters(n, 'I');
    int rem = idx;
    for (int k = n - 1; k >= 0; --k) {
      letters[k] = "IXYZ"[rem & 3];
      rem >>= 2;
    }
    double acc = 0.0;
    int n_compatible = 0;
    for (const auto& s : settings) {
      bool ok = true;
      for (int k = 0; k < n; ++k)
        if (letters[k] != 'I' && letters[k] != s[k]) ok = false;
      if (!ok) continue;
      ++n_compatible;
      double expect = 0.0;
      for (const auto& [outcome, p] : probs[s]) {
        double val = 1.0;
        for (int k = 0; k < n; ++k) {
          if (letters[k] == 'I') continue;
          val *= (outcome[k] == '+' ? 1.0 : -1.0) * letter_sign(s[k]);
        }
        expect += val * p;
      }
      acc += expect;
    }
    const double moment = acc / n_compatible;
    Mat op = Mat::Ones(1, 1);
    for (int k = 0; k < n; ++k) op = kron(op, pauli_for(letters[k]));
    rho += moment * op;
  }
  rho /= static_cast<double>(dim);

  // Projection guarantees PSD; the trace carries the loss.
  DensityMatrix out{project_psd(rho) * trace_scale};
  return out;
}

std::map<std::string, const CountsCell*> tomography_slice(
    const CountsTable& counts, const std::string& input) {
  std::map<std::string, const CountsCell*> slice;
  for (const auto& [key, cell] : counts.cells)
    if (key.first == input) slice[key.second] = &cell;
  return slice;
}

std::vector<std::vector<Pol>> tomography_input_labels() {
  const std::array<Pol, 4> singles = {Pol::H, Pol::V, Pol::D, Pol::R};
  std::vector<std::vector<Pol>> out;
  out.reserve(16);
  for (Pol c : singles)
    for (Pol t : singles) out.push_back({c, t});
  return out;
}

std::vector<StatePair> pairs_from_counts(const CountsTable& counts,
                                         const TomoCalibration& calibration) {
  std::vector<StatePair> pairs;
  for (const auto& labels : tomography_input_labels()) {
    const std::string input = pol_string(labels);
    auto slice = tomography_slice(counts, input);
    require(!slice.empty(), "missing_input",
            "counts lack tomography input " + input);
    const Ket in = polarization_ket(labels);
    const DensityMatrix out = state_tomography(slice, calibration);
    pairs.emplace_back(DensityMatrix::from_ket(in).rho, out.rho);
  }
  return pairs;
}

BootstrapEstimate bootstrap_counts_statistic(
    const CountsTable& counts, int resamples, std::uint64_t seed,
    const std::function<double(const CountsTable&)>& statistic) {
  require(resamples >= 2, "invalid_config", "need at least two resamples");
  BootstrapEstimate est;
  est.value = statistic(counts);
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < resamples; ++r) {
    RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const double v = statistic(resample_counts(counts, rng));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / resamples;
  const double var = std::max(0.0, (sumsq - resamples * mean * mean) /
                                       (resamples - 1));
  est.stddev = std::sqrt(var);
  return est;
}

}  // namespace pgate
