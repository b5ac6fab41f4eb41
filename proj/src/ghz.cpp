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

#include "pgate/ghz.hpp"

#include <algorithm>
#include <cmath>

#include "pgate/errors.hpp"
#include "pgate/units.hpp"

namespace pgate::ghz {

using pgate::fail_numerical;
using pgate::fail_validation;
using pgate::require;

ValueWithError stokes_from_counts(const CountsCell& cell) {
  const double total = static_cast<double>(cell.total());
  if (!(total > 0.0)) fail_validation("empty_counts", "no parity events");
  double s = 0.0;
  for (const auto& [outcome, c] : cell.counts) {
    int parity = 1;
    for (char ch : outcome) parity *= ch == '+' ? 1 : -1;
    s += parity * static_cast<double>(c) / total;
  }
  return {s, std::sqrt(std::max(0.0, 1.0 - s * s) / total)};
}

ValueWithError coherence_from_parities(const ParityDataset& data) {
  const int n = data.n_photons;
  require(n >= 2, "invalid_params", "need at least two photons");
  double acc = 0.0, var = 0.0;
  for (int k = 0; k < n; ++k) {
    const double want = k * units::pi / n;
    const ParityPoint* found = nullptr;
    for (const auto& pt : data.points)
      if (std::abs(pt.theta - want) < 1e-9) found = &pt;
    if (!found)
      fail_validation("wrong_settings",
                      "alternating sum needs the settings k pi / N");
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * found->s;
    var += found->err * found->err;
  }
  return {acc / n, std::sqrt(var) / n};
}

ValueWithError fit_parity(const ParityDataset& data) {
  require(!data.points.empty(), "empty_counts", "no parity points");
  double num = 0.0, den = 0.0;
  for (const auto& pt : data.points) {
    const double w = pt.err > 0.0 ? 1.0 / (pt.err * pt.err) : 1.0;
    const double c = std::cos(data.n_photons * pt.theta);
    num += w * c * pt.s;
    den += w * c * c;
  }
  if (!(den > 0.0))
    fail_numerical("degenerate_data", "parity settings carry no signal");
  const double p = num / den;
  return {std::clamp(p, 0.0, 1.0), std::sqrt(1.0 / den)};
}

GhzSummary ghz_fidelity(ValueWithError p_h, ValueWithError p_v,
                        ValueWithError coherence) {
  GhzSummary s;
  s.p_h = p_h;
  s.p_v = p_v;
  s.populations = {p_h.value + p_v.value,
                   std::hypot(p_h.err, p_v.err)};
  s.coherence = coherence;
  s.fidelity = {0.5 * (s.populations.value + coherence.value),
                0.5 * std::hypot(s.populations.err, coherence.err)};
  s.entanglement_witness = s.fidelity.value > 0.5;
  return s;
}

namespace {

struct RailAmplitudes {
  double c_h, c_v;  // control amplitudes: stored rail, fiber rail
  double r, r_b;    // target reflection amplitudes; r > 0, r_b < 0
};

RailAmplitudes rails(const gate::GateParams& params) {
  require(params.physical.has_value(), "invalid_params",
          "the multi-target model needs the physical decomposition");
  const auto& ph = *params.physical;
  require(ph.eta_sr > 0.0 && ph.eta_f > 0.0, "invalid_params",
          "rail efficiencies must be positive");
  return {std::sqrt(ph.eta_sr), std::sqrt(ph.eta_f), std::sqrt(ph.r_sq),
          -std::sqrt(ph.naive_rb_sq())};
}

}  // namespace

GhzModelResult ghz_closed_forms(const gate::GateParams& params,
                                double v_control, int n_photons) {
  require(n_photons >= 2, "invalid_params", "need at least two photons");
  const RailAmplitudes a = rails(params);
  const double vt = params.v_target;
  const double rb_sq = a.r_b * a.r_b;
  const double r_sq = a.r * a.r;
  const int m = n_photons - 1;

  GhzModelResult out;
  out.eta_n = 0.5 * a.c_h * a.c_h * std::pow(0.5 * (1.0 + rb_sq), m) +
              0.5 * a.c_v * a.c_v * std::pow(0.5 * (1.0 + r_sq), m);
  if (!(out.eta_n > 0.0))
    fail_numerical("zero_efficiency", "no surviving events in the model");

  out.p_h = 0.5 * a.c_h * a.c_h *
            std::pow(0.25 * (1.0 + rb_sq + 2.0 * vt * (-a.r_b)), m) / out.eta_n;
  out.p_v = 0.5 * a.c_v * a.c_v *
            std::pow(0.25 * (1.0 + r_sq + 2.0 * vt * a.r), m) / out.eta_n;
  // The conjugate term doubles the real part.
  out.coherence = 2.0 * v_control * 0.5 * a.c_h * a.c_v *
                  std::pow(0.25 * (1.0 - a.r_b * a.r + vt * (a.r - a.r_b)), m) /
                  out.eta_n;
  return out;
}

GhzMonteCarlo monte_carlo_ghz(const gate::GateParams& params, double v_control,
                              int n_photons, std::uint64_t shots,
                              gate::PhaseNoiseLaw law, std::uint64_t seed) {
  require(n_photons >= 2, "invalid_params", "need at least two photons");
  require(shots >= 1, "invalid_params", "need at least one sample");
  const RailAmplitudes a = rails(params);
  const int m = n_photons - 1;
  const double eta_n =
      0.5 * a.c_h * a.c_h * std::pow(0.5 * (1.0 + a.r_b * a.r_b), m) +
      0.5 * a.c_v * a.c_v * std::pow(0.5 * (1.0 + a.r * a.r), m);
  if (!(eta_n > 0.0))
    fail_numerical("zero_efficiency", "no surviving events in the model");

  // After the D->V, A->H rotation the all-H (all-V) projection of the kept
  // component factors per target photon.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double sum_h = 0.0, sq_h = 0.0, sum_v = 0.0, sq_v = 0.0;
  double sum_c = 0.0, sq_c = 0.0;

  constexpr std::uint64_t kPartition = 1u << 16;
  const std::uint64_t parts = (shots + kPartition - 1) / kPartition;
  for (std::uint64_t part = 0; part < parts; ++part) {
    RandomStream rng(derive_seed(seed, part));
    const std::uint64_t n_here =
        std::min<std::uint64_t>(kPartition, shots - part * kPartition);
    for (std::uint64_t i = 0; i < n_here; ++i) {
      const double beta_c = sample_phase(law, v_control, rng);
      cxd amp_h = a.c_h * inv_sqrt2;
      cxd amp_v = std::polar(a.c_v * inv_sqrt2, beta_c);
      for (int t = 0; t < m; ++t) {
        const double beta_t = sample_phase(law, params.v_target, rng);
        const cxd e = std::polar(1.0, beta_t);
        amp_h *= 0.5 * (1.0 - e * a.r_b);
        amp_v *= 0.5 * (1.0 + e * a.r);
      }
      const double ph = std::norm(amp_h);
      const double pv = std::norm(amp_v);
      const double co = 2.0 * (amp_h * std::conj(amp_v)).real();
      sum_h += ph; sq_h += ph * ph;
      sum_v += pv; sq_v += pv * pv;
      sum_c += co; sq_c += co * co;
    }
  }

  const double n = static_cast<double>(shots);
  const auto finish = [&](double sum, double sq) {
    const double mean = sum / n;
    const double var = std::max(0.0, sq / n - mean * mean);
    return std::pair{mean / eta_n, std::sqrt(var / n) / eta_n};
  };

  GhzMonteCarlo out;
  out.mean.eta_n = eta_n;
  out.stderr_.eta_n = 0.0;
  std::tie(out.mean.p_h, out.stderr_.p_h) = finish(sum_h, sq_h);
  std::tie(out.mean.p_v, out.stderr_.p_v) = finish(sum_v, sq_v);
  std::tie(out.mean.coherence, out.stderr_.coherence) = finish(sum_c, sq_c);
  return out;
}

RateParams RateParams::resolved() const {
  RateParams r = *this;
  const auto fill = [](double& nu, double eta_d, double eta, double nbar) {
    const bool have_parts = std::isfinite(eta) && nbar > 0.0;
    if (!std::isfinite(nu)) {
      require(have_parts, "invalid_params",
              "need either nu or (eta_d, eta, nbar)");
      nu = eta_d * eta * nbar;
    } else if (have_parts) {
      const double derived = eta_d * eta * nbar;
      require(std::abs(nu - derived) <= 1e-9 * std::max(nu, derived),
              "inconsistent_params", "nu disagrees with eta_d * eta * nbar");
    }
  };
  fill(r.nu_c, r.eta_d, r.eta_c, r.nbar_c);
  fill(r.nu_t, r.eta_d, r.eta_t, r.nbar_t);
  return r;
}

std::pair<double, double> mean_path_efficiencies(
    const gate::PhysicalEfficiencies& phys) {
  return {0.5 * (phys.eta_sr + phys.eta_f),
          0.25 * (2.0 + phys.r_sq + phys.naive_rb_sq())};
}

std::vector<double> coincidence_rates(const RateParams& rp, int n_max) {
  require(n_max >= 1, "invalid_params", "need at least one rate");
  const RateParams r = rp.resolved();
  require(r.repetition_rate > 0.0, "invalid_params",
          "repetition rate must be positive");
  std::vector<double> rates;
  rates.reserve(n_max);
  double factorial = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    if (n >= 2) factorial *= (n - 1);
    const double p = r.nu_c * std::exp(-r.nu_c) *
                     std::pow(r.nu_t, n - 1) * std::exp(-r.nu_t) / factorial;
    rates.push_back(p * r.repetition_rate);
  }
  return rates;
}

TwoPhotonRate two_photon_rate(double eta_d, double eta_bar,
                              double repetition_rate, double nbar_c,
                              double nbar_t) {
  TwoPhotonRate out;
  out.per_pair = repetition_rate * eta_d * eta_d * eta_bar;
  out.per_cycle = out.per_pair * nbar_c * nbar_t;
  return out;
}

}  // namespace pgate::ghz
