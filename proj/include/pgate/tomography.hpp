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

#include <functional>
#include <memory>
#include <vector>

#include "pgate/counts.hpp"
#include "pgate/quantum.hpp"

namespace pgate {

using BasisPtr = std::shared_ptr<const OperatorBasis>;

// ---------------------------------------------------------------------------
// Channel representations
// ---------------------------------------------------------------------------

// Matrix representation M of a linear map E with respect to an operator
// basis D: E(D_j) = sum_i D_i M_ij.
struct SuperopMatrix {
  Mat m;
  BasisPtr basis;
};

// Chi representation: E(rho) = sum_ij A_i rho A_j^dag chi_ij. Generally
// trace-decreasing; loss shows up as a reduced trace.
struct ProcessMatrix {
  Mat chi;
  BasisPtr basis;
  bool postselected = false;

  struct Diagnostics {
    double hermiticity_error;
    double min_eigenvalue;
    double trace_real;
  };
  // Statistical estimates can violate Hermiticity/positivity slightly; the
  // violations are reported, never silently repaired.
  Diagnostics diagnostics() const;
  // Throws when the complete-positivity invariants are exceeded
  // (Hermitian within 1e-8, eigenvalues >= -1e-6).
  void validate() const;
};

// The fixed linear map between the superoperator and chi representations for
// an orthonormal basis: M_ij = sum_kl beta[(i,j),(k,l)] chi_kl with
// beta[(i,j),(k,l)] = tr(D_i^dag D_k D_j D_l^dag). Stored flattened with row
// (i,j) -> i*d^2 + j. Self-inverse for every orthonormal basis.
struct BetaTensor {
  Mat flat;
  BasisPtr basis;

  Eigen::Index block() const { return basis->size(); }
};

// Hermitian matrix Theta with eta(rho) = tr(Theta^dag rho), the survival
// probability of the input rho.
struct EfficiencyMatrix {
  Mat theta;
  void validate() const;  // Hermitian within 1e-8, eigenvalues in [-1e-6, 1+1e-6]
};

using StatePair = std::pair<Mat, Mat>;  // (rho_in, rho_out)

// ---------------------------------------------------------------------------
// Process reconstruction
// ---------------------------------------------------------------------------

// Least-structure linear inversion: finds M from measured input/output pairs.
// The input set must span operator space (metric condition number < 1e12),
// otherwise "singular_input_set". Exact for synthetic linear data.
SuperopMatrix superop_from_pairs(const std::vector<StatePair>& pairs,
                                 BasisPtr basis);

// Requires an orthonormal basis ("non_orthonormal_basis" otherwise).
BetaTensor beta_tensor(BasisPtr basis);

// chi_ij = sum_kl beta[(i,j),(k,l)] M_kl; basis tags must match.
ProcessMatrix chi_from_superop(const SuperopMatrix& m, const BetaTensor& beta);
SuperopMatrix superop_from_chi(const ProcessMatrix& chi, const BetaTensor& beta);

// Re-expresses chi in another basis of the same dimension; the represented
// map is unchanged.
ProcessMatrix change_chi_basis(const ProcessMatrix& chi, BasisPtr to);

// E(rho) for the channel represented by chi.
Mat apply_process(const ProcessMatrix& chi, const Mat& rho);

// Normalizes a trace-decreasing channel on its surviving events. Returns the
// postselected chi (trace 1 in a gate-adapted scale-2 basis) and the average
// efficiency eta_bar = tr(Theta)/d. Fails with "zero_trace" when nothing
// survives, and with "already_postselected" on double application.
std::pair<ProcessMatrix, double> postselect_chi(const ProcessMatrix& chi);

// Postselected process fidelity tr(chi_id chi_ps) against the ideal unitary,
// evaluated basis-independently; equals the (1,1) chi element in the
// gate-adapted basis.
double process_fidelity(const ProcessMatrix& chi_ps, const GateUnitary& ideal);

// ---------------------------------------------------------------------------
// Efficiency
// ---------------------------------------------------------------------------

// Theta = sum_ij A_j^dag A_i chi_ij (any basis).
EfficiencyMatrix efficiency_matrix_from_chi(const ProcessMatrix& chi);

// Dual-basis reconstruction Theta = sum_j A^j eta_j^* from survival
// probabilities measured on a spanning (possibly non-orthogonal) input set.
EfficiencyMatrix efficiency_matrix_from_measurements(
    const std::vector<std::pair<Mat, double>>& values);

inline double average_efficiency(const EfficiencyMatrix& theta) {
  return theta.theta.trace().real() / static_cast<double>(theta.theta.rows());
}

// (mean of reciprocals)^-1; "zero_efficiency" when any entry is <= 0.
double harmonic_mean_efficiency(const std::vector<double>& etas);

// ---------------------------------------------------------------------------
// State tomography
// ---------------------------------------------------------------------------

struct TomoCalibration {
  double eta_d = 1.0;
  // Mean photon number per pulse (control first) for Poissonian sources;
  // empty for deterministic single photons. Sets the expected event fraction
  // at unit gate efficiency, which anchors the absolute trace.
  std::vector<double> nbar;
  bool poissonian = false;

  double expected_fraction(int n_photons) const;
};

// Linear-inversion state tomography over the 3^n local Pauli settings
// (H/V, D/A, R/L per photon), with the trace set to the ratio of postselected
// events to the expected events at unit efficiency and the result projected
// to the Frobenius-nearest PSD matrix with that trace.
// `slice` maps setting labels (e.g. "ZX") to cells; all 3^n settings must be
// present ("missing_setting") and non-empty ("empty_counts").
DensityMatrix state_tomography(
    const std::map<std::string, const CountsCell*>& slice,
    const TomoCalibration& calibration);

// Convenience: the slice for one input label of a counts table.
std::map<std::string, const CountsCell*> tomography_slice(
    const CountsTable& counts, const std::string& input);

// Builds the 16 (rho_in, rho_out) pairs for the standard product-state input
// set from a counts table, running state tomography per input.
std::vector<StatePair> pairs_from_counts(const CountsTable& counts,
                                         const TomoCalibration& calibration);

// The 16 tensor products of |H>, |V>, |D>, |R> used as tomography inputs.
std::vector<std::vector<Pol>> tomography_input_labels();

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

struct BootstrapEstimate {
  double value = 0.0;   // statistic on the original counts
  double stddev = 0.0;  // spread over resamples
};

// Resamples the counts table `resamples` times (default 200) and reports the
// spread of the statistic.
BootstrapEstimate bootstrap_counts_statistic(
    const CountsTable& counts, int resamples, std::uint64_t seed,
    const std::function<double(const CountsTable&)>& statistic);

}  // namespace pgate
