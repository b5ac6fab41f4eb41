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

#include "pgate/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pgate::optim {

namespace {

struct Vertex {
  Eigen::VectorXd x;
  double f;
};

NelderMeadResult run_simplex(const CostFn& f, const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& step,
                             const NelderMeadOptions& opt) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, f(x0)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    xi(i) += step(i) != 0.0 ? step(i) : 1e-4;
    simplex.push_back({xi, f(xi)});
  }
  auto by_cost = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::sort(simplex.begin(), simplex.end(), by_cost);

  NelderMeadResult res;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const Vertex& best = simplex.front();
    const Vertex& worst = simplex.back();

    double diam = 0.0;
    for (const auto& v : simplex)
      diam = std::max(diam, (v.x - best.x).norm());
    const double scale = std::max(1.0, best.x.norm());
    if (diam / scale < opt.relative_simplex_tolerance &&
        std::abs(worst.f - best.f) < opt.cost_tolerance) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i].x;
    centroid /= n;

    const Eigen::VectorXd xr = centroid + (centroid - worst.x);
    const double fr = f(xr);
    if (fr < best.f) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = f(xe);
      simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].f) {
      simplex.back() = {xr, fr};
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * (worst.x - centroid);
      const double fc = f(xc);
      if (fc < worst.f) {
        simplex.back() = {xc, fc};
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i].x = best.x + 0.5 * (simplex[i].x - best.x);
          simplex[i].f = f(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_cost);
  }

  res.x = simplex.front().x;
  res.cost = simplex.front().f;
  res.iterations = iter;
  return res;
}

}  // namespace

NelderMeadResult nelder_mead(const CostFn& f, Eigen::VectorXd x0,
                             Eigen::VectorXd initial_step,
                             const NelderMeadOptions& options) {
  NelderMeadResult best = run_simplex(f, x0, initial_step, options);
  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd step = initial_step * std::pow(0.1, r + 1);
    NelderMeadResult again = run_simplex(f, best.x, step, options);
    again.iterations += best.iterations;
    if (again.cost <= best.cost) {
      again.converged = again.converged && best.converged;
      best = again;
    } else {
      best.iterations = again.iterations;
    }
  }
  return best;
}

Eigen::MatrixXd fd_hessian(const CostFn& f, const Eigen::VectorXd& x,
                           double relative_step) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i)
    h(i) = relative_step * std::max(std::abs(x(i)), 1e-8);

  Eigen::MatrixXd hess(n, n);
  const double f0 = f(x);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h(i);
        xm(i) -= h(i);
        hess(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (h(i) * h(i));
      } else {
        Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
        xpp(i) += h(i); xpp(j) += h(j);
        xpm(i) += h(i); xpm(j) -= h(j);
        xmp(i) -= h(i); xmp(j) += h(j);
        xmm(i) -= h(i); xmm(j) -= h(j);
        hess(i, j) = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h(i) * h(j));
        hess(j, i) = hess(i, j);
      }
    }
  }
  return hess;
}

Eigen::VectorXd chisq_parameter_errors(const CostFn& f,
                                       const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const Eigen::MatrixXd h = fd_hessian(f, x);
  Eigen::VectorXd errors =
      Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return errors;
  const Eigen::MatrixXd cov = 2.0 * ldlt.solve(Eigen::MatrixXd::Identity(n, n));
  for (int i = 0; i < n; ++i)
    errors(i) = cov(i, i) > 0.0 ? std::sqrt(cov(i, i))
                                : std::numeric_limits<double>::quiet_NaN();
  return errors;
}

}  // namespace pgate::optim
