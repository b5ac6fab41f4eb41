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

#include "pgate/shot_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pgate/errors.hpp"
#include "pgate/units.hpp"

namespace pgate::sim {

using pgate::fail_validation;
using pgate::require;

namespace {

constexpr int kMaxPhotonsPerPulse = 12;  // Poisson tail beyond this is ~1e-12

// Branch-pair weights over the control rails, indexed 2*j + j' with
// j, j' in {H=0, V=1}. Per-photon outcome factors multiply entrywise; the
// event probability is the (Hermitian) sum over pairs.
using PairWeights = std::array<cxd, 4>;

PairWeights ones() { return {1.0, 1.0, 1.0, 1.0}; }

PairWeights hadamard(const PairWeights& a, const PairWeights& b) {
  return {a[0] * b[0], a[1] * b[1], a[2] * b[2], a[3] * b[3]};
}

double pair_sum(const PairWeights& a, const PairWeights& b,
                const PairWeights& c) {
  cxd acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += a[i] * b[i] * c[i];
  return std::max(0.0, acc.real());
}

struct RailAmplitudes {
  double c_h, c_v;    // control survival amplitude per rail
  double t_hv, t_vv;  // target V-component amplitude per control rail
};

struct CellContext {
  Eigen::Vector2cd control_in;
  std::vector<Eigen::Vector2cd> target_in;
  // Analysis kets with any target rotation already folded in.
  Eigen::Vector2cd ctrl_plus, ctrl_minus;
  std::vector<Eigen::Vector2cd> tgt_plus, tgt_minus;
  RailAmplitudes rail;
  int n_targets = 0;
};

// Outcome factors for one photon: detected +, detected -, undetected.
struct PhotonFactors {
  PairWeights plus, minus, und, total;
};

PhotonFactors control_factors(const CellContext& ctx, double eta_d,
                              double beta_c) {
  const cxd amp_h = ctx.control_in(0) * ctx.rail.c_h;
  const cxd amp_v = ctx.control_in(1) * ctx.rail.c_v * std::polar(1.0, beta_c);
  const std::array<cxd, 2> amp = {amp_h, amp_v};
  const std::array<double, 2> in_sq = {std::norm(ctx.control_in(0)),
                                       std::norm(ctx.control_in(1))};
  const std::array<double, 2> c_sq = {ctx.rail.c_h * ctx.rail.c_h,
                                      ctx.rail.c_v * ctx.rail.c_v};
  PhotonFactors f;
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp) {
      const int idx = 2 * j + jp;
      const cxd pj = amp[j] * std::conj(amp[jp]);
      const cxd bp_j = ctx.ctrl_plus(j), bp_jp = ctx.ctrl_plus(jp);
      const cxd bm_j = ctx.ctrl_minus(j), bm_jp = ctx.ctrl_minus(jp);
      f.plus[idx] = eta_d * pj * std::conj(bp_j) * bp_jp;
      f.minus[idx] = eta_d * pj * std::conj(bm_j) * bm_jp;
      f.und[idx] = (j == jp)
                       ? cxd(in_sq[j] * ((1.0 - eta_d) * c_sq[j] +
                                         (1.0 - c_sq[j])),
                             0.0)
                       : cxd(0.0, 0.0);
      f.total[idx] = f.plus[idx] + f.minus[idx] + f.und[idx];
    }
  return f;
}

PhotonFactors target_factors(const CellContext& ctx, int target_index,
                             double eta_d, double beta_t) {
  const Eigen::Vector2cd& tau = ctx.target_in[target_index];
  const cxd phase = std::polar(1.0, beta_t);
  const std::array<cxd, 2> phi_h = {tau(0), tau(1) * phase * ctx.rail.t_hv};
  const std::array<cxd, 2> phi_v = {tau(0), tau(1) * phase * ctx.rail.t_vv};
  const std::array<const std::array<cxd, 2>*, 2> phi = {&phi_h, &phi_v};

  const Eigen::Vector2cd& bp = ctx.tgt_plus[target_index];
  const Eigen::Vector2cd& bm = ctx.tgt_minus[target_index];

  std::array<cxd, 2> amp_p, amp_m;
  std::array<double, 2> norm_sq;
  for (int j = 0; j < 2; ++j) {
    amp_p[j] = std::conj(bp(0)) * (*phi[j])[0] + std::conj(bp(1)) * (*phi[j])[1];
    amp_m[j] = std::conj(bm(0)) * (*phi[j])[0] + std::conj(bm(1)) * (*phi[j])[1];
    norm_sq[j] = std::norm((*phi[j])[0]) + std::norm((*phi[j])[1]);
  }

  PhotonFactors f;
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp) {
      const int idx = 2 * j + jp;
      f.plus[idx] = eta_d * amp_p[j] * std::conj(amp_p[jp]);
      f.minus[idx] = eta_d * amp_m[j] * std::conj(amp_m[jp]);
      // Survived-but-missed keeps the rail coherence; loss into the gate
      // environment does not.
      const cxd overlap = std::conj((*phi[jp])[0]) * (*phi[j])[0] +
                          std::conj((*phi[jp])[1]) * (*phi[j])[1];
      f.und[idx] = (1.0 - eta_d) * overlap;
      if (j == jp) f.und[idx] += 1.0 - norm_sq[j];
      f.total[idx] = f.plus[idx] + f.minus[idx] + f.und[idx];
    }
  return f;
}

enum Outcome : int { kPlus = 0, kMinus = 1, kUndetected = 2 };

int sample_outcome(const PairWeights& prefix, const PhotonFactors& f,
                   const PairWeights& suffix, RandomStream& rng) {
  const double p_plus = pair_sum(prefix, f.plus, suffix);
  const double p_minus = pair_sum(prefix, f.minus, suffix);
  const double p_und = pair_sum(prefix, f.und, suffix);
  const double total = p_plus + p_minus + p_und;
  if (!(total > 0.0)) return kUndetected;
  const double u = rng.uniform() * total;
  if (u < p_plus) return kPlus;
  if (u < p_plus + p_minus) return kMinus;
  return kUndetected;
}

struct CellTally {
  std::vector<std::uint64_t> outcomes;  // indexed by sign bits, '-' = 1
};

void run_partition(const SimConfig& cfg, const CellContext& ctx,
                   std::uint64_t n_shots, RandomStream& rng, CellTally& tally) {
  const int n_nominal_targets = ctx.n_targets;
  std::vector<PhotonFactors> target_f;
  std::vector<PairWeights> suffix;
  std::vector<int> target_sign;
  std::vector<int> extra_dark_signs;

  for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
    int n_c = 1, n_t = n_nominal_targets;
    if (cfg.mode == SourceMode::poissonian) {
      n_c = std::min<int>(rng.poisson(cfg.nbar_c), kMaxPhotonsPerPulse);
      n_t = std::min<int>(rng.poisson(cfg.nbar_t), kMaxPhotonsPerPulse);
    }
    if (cfg.dark_rate == 0.0 && (n_c == 0 || n_t < n_nominal_targets)) continue;

    const double beta_c =
        gate::sample_phase(cfg.noise_law, cfg.gate.v_control, rng);

    // Entangled block: the primary control photon plus every target photon;
    // all targets are conditioned on the same control rail. Each target
    // draws an independent phase.
    const bool have_control = n_c >= 1;
    target_f.clear();
    for (int t = 0; t < n_t; ++t) {
      const int which = std::min(t, n_nominal_targets - 1);
      const double beta_t =
          gate::sample_phase(cfg.noise_law, cfg.gate.v_target, rng);
      PhotonFactors f = target_factors(ctx, which, cfg.eta_d, beta_t);
      target_f.push_back(f);
    }
    PhotonFactors ctrl_f;
    if (have_control) ctrl_f = control_factors(ctx, cfg.eta_d, beta_c);

    // Suffix products of per-photon totals, entangled photons only.
    const int block = (have_control ? 1 : 0) + n_t;
    suffix.assign(block + 1, ones());
    for (int k = block - 1; k >= 0; --k) {
      const PhotonFactors& f =
          (have_control && k == 0) ? ctrl_f : target_f[k - (have_control ? 1 : 0)];
      suffix[k] = hadamard(suffix[k + 1], f.total);
    }

    PairWeights prefix = ones();
    if (!have_control) prefix = {0.0, 0.0, 0.0, 1.0};  // no stored excitation

    int detected_controls = 0;
    int control_sign = 0;
    target_sign.clear();
    for (int k = 0; k < block; ++k) {
      const PhotonFactors& f =
          (have_control && k == 0) ? ctrl_f : target_f[k - (have_control ? 1 : 0)];
      const int s = sample_outcome(prefix, f, suffix[k + 1], rng);
      prefix = hadamard(prefix, s == kPlus    ? f.plus
                                : s == kMinus ? f.minus
                                              : f.und);
      if (have_control && k == 0) {
        if (s != kUndetected) {
          detected_controls = 1;
          control_sign = s;
        }
      } else if (s != kUndetected) {
        target_sign.push_back(s);
      }
    }

    // Surplus control photons travel the same rails but unentangled.
    for (int e = 1; e < n_c; ++e) {
      const cxd psi_h = ctx.control_in(0) * ctx.rail.c_h;
      const cxd psi_v =
          ctx.control_in(1) * ctx.rail.c_v * std::polar(1.0, beta_c);
      const cxd ap = std::conj(ctx.ctrl_plus(0)) * psi_h +
                     std::conj(ctx.ctrl_plus(1)) * psi_v;
      const cxd am = std::conj(ctx.ctrl_minus(0)) * psi_h +
                     std::conj(ctx.ctrl_minus(1)) * psi_v;
      const double pp = cfg.eta_d * std::norm(ap);
      const double pm = cfg.eta_d * std::norm(am);
      const double u = rng.uniform();
      if (u < pp) {
        ++detected_controls;
        control_sign = kPlus;
      } else if (u < pp + pm) {
        ++detected_controls;
        control_sign = kMinus;
      }
    }

    if (cfg.dark_rate > 0.0) {
      for (int s : {kPlus, kMinus}) {
        const auto n_dark_c = rng.poisson(cfg.dark_rate);
        detected_controls += static_cast<int>(n_dark_c);
        if (n_dark_c > 0) control_sign = s;
        const auto n_dark_t = rng.poisson(cfg.dark_rate);
        for (std::uint32_t i = 0; i < n_dark_t; ++i) target_sign.push_back(s);
      }
    }

    if (detected_controls != 1 ||
        static_cast<int>(target_sign.size()) != n_nominal_targets)
      continue;

    int index = control_sign == kMinus ? 1 : 0;
    for (int t = 0; t < n_nominal_targets; ++t)
      index |= (target_sign[t] == kMinus ? 1 : 0) << (t + 1);
    ++tally.outcomes[index];
  }
}

CellContext make_context(const SimConfig& cfg, const PlanCell& cell) {
  CellContext ctx;
  ctx.n_targets = static_cast<int>(cell.input.size()) - 1;
  ctx.control_in = pol_ket(cell.input[0]);
  for (int t = 0; t < ctx.n_targets; ++t)
    ctx.target_in.push_back(pol_ket(cell.input[t + 1]));

  const auto& e = cfg.gate.eta;
  ctx.rail.c_h = std::sqrt(e[0]);
  ctx.rail.c_v = std::sqrt(e[2]);
  ctx.rail.t_hv = e[0] > 0.0 ? -std::sqrt(e[1] / e[0]) : 0.0;
  ctx.rail.t_vv = e[2] > 0.0 ? std::sqrt(e[3] / e[2]) : 0.0;

  ctx.ctrl_plus = cell.settings[0].plus_ket();
  ctx.ctrl_minus = cell.settings[0].minus_ket();
  Eigen::Matrix2cd rot = Eigen::Matrix2cd::Identity();
  if (cfg.rotate_targets) {
    const double s = 1.0 / std::sqrt(2.0);
    rot << s, -s, s, s;  // D -> V, A -> H
  }
  for (int t = 0; t < ctx.n_targets; ++t) {
    ctx.tgt_plus.push_back(rot.adjoint() * cell.settings[t + 1].plus_ket());
    ctx.tgt_minus.push_back(rot.adjoint() * cell.settings[t + 1].minus_ket());
  }
  return ctx;
}

std::string outcome_string(int index, int n_photons) {
  std::string s(n_photons, '+');
  for (int k = 0; k < n_photons; ++k)
    if (index & (1 << k)) s[k] = '-';
  return s;
}

}  // namespace

void SimConfig::validate() const {
  require(shots >= 1, "invalid_config", "need at least one shot");
  require(!plan.empty(), "invalid_config", "empty measurement plan");
  require(eta_d >= 0.0 && eta_d <= 1.0, "invalid_config",
          "detection efficiency outside [0, 1]");
  require(nbar_c >= 0.0 && nbar_t >= 0.0 && dark_rate >= 0.0, "invalid_config",
          "negative rate");
  gate.validate();
  const auto& e = gate.eta;
  require(e[1] <= e[0] + 1e-12 && e[3] <= e[2] + 1e-12, "invalid_config",
          "rail amplitudes need eta_HV <= eta_HH and eta_VV <= eta_VH");
  for (const auto& cell : plan) {
    require(cell.input.size() >= 2, "invalid_config",
            "each cell needs a control and at least one target");
    require(cell.settings.size() == cell.input.size(), "invalid_config",
            "one analysis setting per photon");
    if (mode == SourceMode::poissonian) {
      for (size_t t = 2; t < cell.input.size(); ++t)
        require(cell.input[t] == cell.input[1], "invalid_config",
                "poissonian mode needs a uniform target pulse polarization");
      for (size_t t = 2; t < cell.settings.size(); ++t)
        require(cell.settings[t].label() == cell.settings[1].label(),
                "invalid_config",
                "poissonian mode needs a uniform target analysis basis");
    }
  }
}

nlohmann::json SimConfig::to_json() const {
  nlohmann::json j;
  j["mode"] = mode == SourceMode::exactly_one ? "exactly-one" : "poissonian";
  j["nbar_c"] = nbar_c;
  j["nbar_t"] = nbar_t;
  j["eta"] = gate.eta;
  j["v_control"] = gate.v_control;
  j["v_target"] = gate.v_target;
  j["noise_law"] =
      noise_law == gate::PhaseNoiseLaw::gaussian ? "gaussian" : "two-point";
  j["eta_d"] = eta_d;
  j["dark_rate"] = dark_rate;
  j["shots"] = shots;
  j["seed"] = seed;
  j["rotate_targets"] = rotate_targets;
  j["cells"] = plan.size();
  if (mode == SourceMode::poissonian)
    j["approximation"] = "independent-extra-photons";
  return j;
}

CountsTable run_simulation(const SimConfig& config) {
  config.validate();
  CountsTable table;
  table.meta = config.to_json();

  constexpr std::uint64_t kPartition = 1u << 16;
  for (std::size_t ci = 0; ci < config.plan.size(); ++ci) {
    const PlanCell& cell = config.plan[ci];
    const CellContext ctx = make_context(config, cell);
    const int n_photons = ctx.n_targets + 1;

    CellTally tally;
    tally.outcomes.assign(std::size_t{1} << n_photons, 0);

    const std::uint64_t parts = (config.shots + kPartition - 1) / kPartition;
    for (std::uint64_t part = 0; part < parts; ++part) {
      RandomStream rng(derive_seed(config.seed, ci, part));
      const std::uint64_t n_here =
          std::min<std::uint64_t>(kPartition, config.shots - part * kPartition);
      run_partition(config, ctx, n_here, rng, tally);
    }

    CountsCell& out = table.cell(pol_string(cell.input),
                                 setting_label(cell.settings));
    out.invocations = config.shots;
    for (std::size_t idx = 0; idx < tally.outcomes.size(); ++idx)
      if (tally.outcomes[idx] > 0)
        out.counts[outcome_string(static_cast<int>(idx), n_photons)] =
            tally.outcomes[idx];
  }
  return table;
}

std::vector<PlanCell> tomography_plan() {
  std::vector<PlanCell> plan;
  const std::array<AnalysisBasis::Kind, 3> kinds = {
      AnalysisBasis::Kind::z, AnalysisBasis::Kind::x, AnalysisBasis::Kind::y};
  for (const auto& input : tomography_input_labels())
    for (auto kc : kinds)
      for (auto kt : kinds) {
        PlanCell cell;
        cell.input = input;
        cell.settings = {AnalysisBasis{kc, 0.0}, AnalysisBasis{kt, 0.0}};
        plan.push_back(std::move(cell));
      }
  return plan;
}

std::vector<PlanCell> parity_plan(int n_photons,
                                  const std::vector<double>& thetas) {
  require(n_photons >= 2, "invalid_config", "need at least two photons");
  std::vector<PlanCell> plan;
  const std::vector<Pol> input(n_photons, Pol::D);
  for (double theta : thetas) {
    PlanCell cell;
    cell.input = input;
    cell.settings.assign(n_photons,
                         AnalysisBasis{AnalysisBasis::Kind::theta, theta});
    plan.push_back(std::move(cell));
  }
  PlanCell populations;
  populations.input = input;
  populations.settings.assign(n_photons, AnalysisBasis{AnalysisBasis::Kind::z, 0.0});
  plan.push_back(std::move(populations));
  return plan;
}

std::vector<PlanCell> truth_table_plan(gate::TruthBasis basis) {
  std::vector<PlanCell> plan;
  const AnalysisBasis target{basis == gate::TruthBasis::cphase
                                 ? AnalysisBasis::Kind::z
                                 : AnalysisBasis::Kind::x,
                             0.0};
  for (const auto& input : gate::truth_basis_states(basis)) {
    PlanCell cell;
    cell.input = input;
    cell.settings = {AnalysisBasis{AnalysisBasis::Kind::z, 0.0}, target};
    plan.push_back(std::move(cell));
  }
  return plan;
}

}  // namespace pgate::sim
