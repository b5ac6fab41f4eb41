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
#include <functional>

namespace pgate::optim {

using CostFn = std::function<double(const Eigen::VectorXd&)>;

struct NelderMeadOptions {
  int max_iterations = 20000;
  // Converged when the simplex diameter is below this, relative to the best
  // vertex, and the cost spread is below cost_tolerance.
  double relative_simplex_tolerance = 1e-6;
  double cost_tolerance = 1e-10;
  int restarts = 2;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Derivative-free simplex descent (reflection/expansion/contraction/shrink)
// with restarts around the incumbent best point.
NelderMeadResult nelder_mead(const CostFn& f, Eigen::VectorXd x0,
                             Eigen::VectorXd initial_step,
                             const NelderMeadOptions& options = {});

// Central-difference Hessian.
Eigen::MatrixXd fd_hessian(const CostFn& f, const Eigen::VectorXd& x,
                           double relative_step = 1e-4);

// Standard errors for a chi-square-distributed cost: cov = 2 H^{-1}. Entries
// are NaN when the curvature is not positive definite.
Eigen::VectorXd chisq_parameter_errors(const CostFn& f,
                                       const Eigen::VectorXd& x);

}  // namespace pgate::optim
