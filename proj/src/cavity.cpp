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

#include "pgate/cavity.hpp"

#include <cmath>

#include "pgate/errors.hpp"
#include "pgate/optim.hpp"
#include "pgate/units.hpp"

namespace pgate::cavity {

using pgate::fail_numerical;
using pgate::fail_validation;
using pgate::require;
using namespace pgate::units;

namespace {

bool known(double v) { return std::isfinite(v); }

// Assigns a value derived from a relation; complains when it contradicts a
// value that is already set.
void assign(double& slot, double value, const char* what) {
  if (!known(value)) return;
  if (!known(slot)) {
    slot = value;
    return;
  }
  const double scale = std::max(std::abs(slot), std::abs(value));
  if (std::abs(slot - value) > 1e-6 * scale)
    fail_validation("inconsistent_params",
                    std::string("cavity parameters disagree on ") + what);
}

double finesse_from_rsq(double rsq) {
  if (!known(rsq)) return CavityParams::nan();
  return -two_pi / std::log(rsq);
}

double rsq_from_finesse(double f) {
  if (!known(f)) return CavityParams::nan();
  return std::exp(-two_pi / f);
}

}  // namespace

double CavityParams::kin_ratio() const {
  if (known(kappa) && known(kappa_in)) return kappa_in / kappa;
  if (known(finesse) && known(finesse_in)) return finesse / finesse_in;
  fail_validation("under_determined", "kappa_in/kappa is not determined");
}

void CavityParams::require_rates() const {
  require(known(kappa) && known(kappa_in), "under_determined",
          "cavity rates are not determined");
}

CavityParams complete_cavity_params(CavityParams p, bool require_full) {
  for (double v : {p.axial_mode_spacing, p.finesse, p.finesse_in, p.finesse_h,
                   p.kappa, p.kappa_in, p.kappa_h, p.r_in_sq, p.r_h_sq,
                   p.gamma, p.gamma_e, p.g})
    if (known(v) && v <= 0.0)
      fail_validation("invalid_params", "cavity parameters must be positive");

  // Propagate the relation set to a fixed point. Each pass is cheap; a
  // handful of passes settles every reachable field.
  for (int pass = 0; pass < 8; ++pass) {
    assign(p.finesse_in, finesse_from_rsq(p.r_in_sq), "finesse_in");
    assign(p.r_in_sq, rsq_from_finesse(p.finesse_in), "r_in_sq");
    assign(p.finesse_h, finesse_from_rsq(p.r_h_sq), "finesse_h");
    assign(p.r_h_sq, rsq_from_finesse(p.finesse_h), "r_h_sq");

    if (known(p.finesse_in) && known(p.finesse_h))
      assign(p.finesse, 1.0 / (1.0 / p.finesse_in + 1.0 / p.finesse_h),
             "finesse");
    if (known(p.finesse) && known(p.finesse_h) && p.finesse_h > p.finesse)
      assign(p.finesse_in, 1.0 / (1.0 / p.finesse - 1.0 / p.finesse_h),
             "finesse_in");
    if (known(p.finesse) && known(p.finesse_in) && p.finesse_in > p.finesse)
      assign(p.finesse_h, 1.0 / (1.0 / p.finesse - 1.0 / p.finesse_in),
             "finesse_h");

    if (known(p.axial_mode_spacing)) {
      assign(p.kappa, known(p.finesse)
                          ? p.axial_mode_spacing / (2.0 * p.finesse)
                          : CavityParams::nan(),
             "kappa");
      assign(p.kappa_in, known(p.finesse_in)
                             ? p.axial_mode_spacing / (2.0 * p.finesse_in)
                             : CavityParams::nan(),
             "kappa_in");
      assign(p.kappa_h, known(p.finesse_h)
                            ? p.axial_mode_spacing / (2.0 * p.finesse_h)
                            : CavityParams::nan(),
             "kappa_h");
      assign(p.finesse, known(p.kappa)
                            ? p.axial_mode_spacing / (2.0 * p.kappa)
                            : CavityParams::nan(),
             "finesse");
      assign(p.finesse_in, known(p.kappa_in)
                               ? p.axial_mode_spacing / (2.0 * p.kappa_in)
                               : CavityParams::nan(),
             "finesse_in");
      assign(p.finesse_h, known(p.kappa_h)
                              ? p.axial_mode_spacing / (2.0 * p.kappa_h)
                              : CavityParams::nan(),
             "finesse_h");
    }
    if (known(p.kappa_in) && known(p.kappa_h))
      assign(p.kappa, p.kappa_in + p.kappa_h, "kappa");
    if (known(p.kappa) && known(p.kappa_h) && p.kappa > p.kappa_h)
      assign(p.kappa_in, p.kappa - p.kappa_h, "kappa_in");
    if (known(p.kappa) && known(p.kappa_in) && p.kappa > p.kappa_in)
      assign(p.kappa_h, p.kappa - p.kappa_in, "kappa_h");

    if (known(p.gamma)) assign(p.gamma_e, 2.0 * p.gamma, "gamma_e");
    if (known(p.gamma_e)) assign(p.gamma, 0.5 * p.gamma_e, "gamma");
  }

  if (require_full) {
    const bool full = known(p.finesse) && known(p.finesse_in) &&
                      known(p.finesse_h) && known(p.kappa) &&
                      known(p.kappa_in) && known(p.kappa_h) &&
                      known(p.r_in_sq) && known(p.r_h_sq);
    require(full, "under_determined",
            "cavity parameters cannot all be derived from the given fields");
  }
  return p;
}

cxd effective_cooperativity(const EitParams& p, double gamma_e) {
  const cxd ground = cxd(p.gamma_rg, -2.0 * (p.delta_co + p.delta_s));
  cxd denom = cxd(gamma_e, -2.0 * p.delta_s);
  if (p.rabi != 0.0) {
    if (std::abs(ground) == 0.0)
      fail_numerical("singular_denominator",
                     "vanishing ground-Rydberg linewidth at two-photon resonance");
    denom += p.rabi * p.rabi / ground;
  }
  if (std::abs(denom) == 0.0)
    fail_numerical("singular_denominator",
                   "effective-cooperativity denominator vanishes");
  return p.cooperativity * gamma_e / denom;
}

cxd reflection(const EitParams& p, const CavityParams& cavity) {
  cavity.require_rates();
  require(known(cavity.gamma_e), "under_determined",
          "atomic linewidth is not set");
  const cxd ceff = effective_cooperativity(p, cavity.gamma_e);
  return -1.0 + 2.0 * cavity.kappa_in /
                    (cavity.kappa * (1.0 + ceff) - cxd(0.0, p.delta_c));
}

bool reflection_model_valid(const EitParams& p, const CavityParams& cavity) {
  if (!known(cavity.finesse) || !known(cavity.gamma_e)) return true;
  return std::abs(effective_cooperativity(p, cavity.gamma_e)) <
         cavity.finesse / pi;
}

std::vector<SpectrumPoint> spectrum(const EitParams& p,
                                    const CavityParams& cavity,
                                    const std::vector<double>& detunings,
                                    double cavity_offset) {
  std::vector<SpectrumPoint> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    EitParams q = p;
    q.delta_s = p.delta_s + d;
    q.delta_c = d + cavity_offset;
    SpectrumPoint pt;
    pt.delta_c = d;
    pt.amplitude = reflection(q, cavity);
    pt.intensity = std::norm(pt.amplitude);
    pt.phase = std::arg(pt.amplitude);
    out.push_back(pt);
  }
  return out;
}

double conditional_phase(const EitParams& p, const CavityParams& cavity) {
  EitParams off = p;
  off.rabi = 0.0;
  off.delta_c = 0.0;
  EitParams on = p;
  on.delta_c = 0.0;
  const double diff =
      std::arg(reflection(off, cavity)) - std::arg(reflection(on, cavity));
  double d = std::fmod(std::abs(diff), two_pi);
  if (d > pi) d = two_pi - d;
  return d;
}

namespace {

double wrap_phase(double x) {
  while (x > pi) x -= two_pi;
  while (x <= -pi) x += two_pi;
  return x;
}

}  // namespace

SpectrumFit fit_spectrum(const std::vector<SpectrumPoint>& points,
                         FitStage stage, const CavityParams& cavity,
                         const EitParams& initial) {
  const int n_free = stage == FitStage::absorption ? 1 : 2;
  require(static_cast<int>(points.size()) >= 3 * n_free, "too_few_points",
          "need at least three points per free parameter");
  for (const auto& pt : points)
    require(pt.intensity_err > 0.0 && pt.phase_err > 0.0, "invalid_errors",
            "spectrum points need positive error bars");
  bool all_same = true;
  for (const auto& pt : points)
    if (pt.delta_c != points.front().delta_c) all_same = false;
  require(!all_same, "degenerate_data", "all points at the same detuning");

  const auto model = [&](const Eigen::VectorXd& x, const SpectrumPoint& pt) {
    EitParams q = initial;
    if (stage == FitStage::absorption) {
      q.cooperativity = x(0);
      q.rabi = 0.0;
    } else {
      q.rabi = x(0);
      q.gamma_rg = x(1);
    }
    q.delta_s = initial.delta_s + pt.delta_c;
    q.delta_c = pt.delta_c;
    return reflection(q, cavity);
  };

  const auto cost = [&](const Eigen::VectorXd& x) {
    for (int i = 0; i < x.size(); ++i)
      if (x(i) <= 0.0) return 1e100;  // physical parameters are positive
    double acc = 0.0;
    for (const auto& pt : points) {
      const cxd r = model(x, pt);
      const double di = (std::norm(r) - pt.intensity) / pt.intensity_err;
      const double dp = wrap_phase(std::arg(r) - pt.phase) / pt.phase_err;
      acc += di * di + dp * dp;
    }
    return acc;
  };

  Eigen::VectorXd x0(n_free), step(n_free);
  if (stage == FitStage::absorption) {
    x0 << initial.cooperativity;
    step << 0.3 * std::max(initial.cooperativity, 1.0);
  } else {
    x0 << initial.rabi, initial.gamma_rg;
    step << 0.3 * std::max(initial.rabi, mhz(1.0)),
        0.3 * std::max(initial.gamma_rg, 1e5);
  }

  const auto res = optim::nelder_mead(cost, x0, step);
  if (!res.converged)
    fail_numerical("non_convergence", "spectrum fit did not converge");

  const Eigen::VectorXd errs = optim::chisq_parameter_errors(cost, res.x);

  SpectrumFit fit;
  fit.params = initial;
  if (stage == FitStage::absorption) {
    fit.params.cooperativity = res.x(0);
    fit.params.rabi = 0.0;
    fit.err_cooperativity = errs(0);
  } else {
    fit.params.rabi = res.x(0);
    fit.params.gamma_rg = res.x(1);
    fit.err_rabi = errs(0);
    fit.err_gamma_rg = errs(1);
  }
  fit.n_points = static_cast<int>(points.size());
  const int dof = 2 * fit.n_points - n_free;
  fit.reduced_chisq = res.cost / dof;
  fit.converged = true;
  return fit;
}

double storage_retrieval_efficiency(double cooperativity, double kin_ratio,
                                    double gamma_rg, double t) {
  require(cooperativity >= 0.0 && kin_ratio >= 0.0 && gamma_rg >= 0.0 &&
              t >= 0.0,
          "invalid_params", "storage model needs non-negative inputs");
  const double mode = kin_ratio * cooperativity / (cooperativity + 1.0);
  return mode * mode * std::exp(-gamma_rg * t);
}

double forster_gamma_estimate(double gamma_rg, const BlockadeParams& bp) {
  require(bp.alpha_r != 0.0, "invalid_params",
          "Rydberg polarizability must be nonzero");
  return std::abs((bp.alpha_gp - bp.alpha_rp) / bp.alpha_r) * gamma_rg;
}

double blockade_radius(const BlockadeParams& bp, double cooperativity,
                       double rabi, double gamma_e) {
  require(rabi > 0.0, "zero_rabi", "blockade radius needs a nonzero Rabi frequency");
  require(bp.c3 > 0.0, "invalid_params", "C3 must be positive");
  require(bp.gamma_f > 0.0 || bp.delta_f != 0.0, "invalid_params",
          "need a pair decay rate or a Forster defect");
  const double lever = 2.0 * bp.c3 / (hbar * rabi);
  const cxd pair = cxd(bp.gamma_f, -2.0 * bp.delta_f);
  const cxd arg = lever * lever * (gamma_e / pair) * cooperativity;
  return std::pow(std::abs(arg), 1.0 / 6.0);
}

CouplingEstimate coupling_and_cooperativity(const GeometryParams& geo,
                                            const CavityParams& cavity) {
  require(geo.waist > 0.0 && geo.round_trip_length > 0.0 && geo.sigma_x > 0.0 &&
              geo.sigma_y > 0.0,
          "invalid_params", "geometry lengths must be positive");
  CouplingEstimate est;
  const double mode_peak =
      std::sqrt(2.0 / (pi * geo.waist * geo.waist * geo.round_trip_length));
  est.g = geo.dipole_moment * mode_peak * std::sqrt(geo.omega / (2.0 * hbar * eps0));
  est.transverse_factor =
      1.0 / std::sqrt(1.0 + std::pow(2.0 * geo.sigma_x / geo.waist, 2)) /
      std::sqrt(1.0 + std::pow(2.0 * geo.sigma_y / geo.waist, 2));
  require(known(cavity.kappa) && known(cavity.gamma), "under_determined",
          "need kappa and gamma for the cooperativity");
  const double g_used = known(cavity.g) ? cavity.g : est.g;
  est.single_atom_cooperativity = g_used * g_used / (cavity.kappa * cavity.gamma);
  est.cooperativity_max = geo.atom_number * est.single_atom_cooperativity;
  est.cooperativity_expected = est.cooperativity_max * est.transverse_factor;
  return est;
}

}  // namespace pgate::cavity
