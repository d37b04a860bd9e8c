// Copyright 2026 The obdestripe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "obds/fft.hpp"
#include "obds/image.hpp"
#include "obds/orientation.hpp"

namespace obds {

/// Weights of  TV(X) + lambda1 ||D_theta (X - Y)||_1 + lambda2 ||X - Y||_1
/// and the ADMM penalties used to minimize it.
struct SolverParams {
  double lambda1 = 2.0;
  double lambda2 = 0.005;
  double rho1 = 5.0;
  double rho2 = 5.0;
  double rho3 = 5.0;
  double eps_stop = 1e-5;
  int n_max = 200;
  CandidateDirection direction{};

  void validate() const;
};

/// ADMM iterate. Multipliers are stored unscaled (the p of p / rho).
struct SolverState {
  Image x;
  Image dh, dv;
  Image v;
  Image h;
  Image ph, pv;
  Image p2;
  Image p3;
  int k = 0;

  /// X = Y, every auxiliary and multiplier zero.
  static SolverState initial(const Image& y);
};

/// Transfer functions of D_h, D_v and D_theta on the solver grid.
struct OperatorSpectra {
  std::vector<std::complex<double>> h;
  std::vector<std::complex<double>> v;
  std::vector<std::complex<double>> theta;

  static OperatorSpectra make(OffsetOperator direction, std::size_t rows, std::size_t cols);
};

struct Multipliers {
  Image ph, pv, p2, p3;
};

struct IterationRecord {
  int k = 0;
  double rel_change = 0.0;
  double objective = 0.0;
  double residual_tv = 0.0;  ///< ||D X - d||
  double residual_ov = 0.0;  ///< ||D_theta (X - Y) - V||
  double residual_l1 = 0.0;  ///< ||(X - Y) - H||
};

struct DestripeResult {
  Image x;  ///< clean estimate
  Image s;  ///< stripe field, exactly Y - X
  std::vector<IterationRecord> trace;
  bool converged = false;
};

/// Isotropic TV with periodic forward differences.
double total_variation(const Image& x);

double objective(const Image& x, const Image& y, const SolverParams& params);

double soft_shrink(double alpha, double gamma) noexcept;
Image soft_shrink(const Image& alpha, double gamma);

/// V = shrink(D_theta X - D_theta Y + p2 / rho2, lambda1 / rho2).
Image update_V(const SolverState& state, const Image& y, const SolverParams& params);

/// H = shrink(X - Y + p3 / rho3, lambda2 / rho3).
Image update_H(const SolverState& state, const Image& y, const SolverParams& params);

/// Joint radial shrinkage of (D_h X + p_h / rho1, D_v X + p_v / rho1) by
/// 1 / rho1. Returns (d_h, d_v).
std::pair<Image, Image> update_d(const SolverState& state, const SolverParams& params);

/// Closed-form FFT solve of
///   (rho1 D^T D + rho2 D_theta^T D_theta + rho3 I) X = rhs.
/// rho1 and rho2 may be zero here; rho3 must be positive.
Image update_X(const SolverState& state, const Image& y, const SolverParams& params,
               const OperatorSpectra& spectra, Fft2d& fft);
Image update_X(const SolverState& state, const Image& y, const SolverParams& params,
               const OperatorSpectra& spectra);

/// Right-hand side of the X normal equations for the current state.
Image x_update_rhs(const SolverState& state, const Image& y, const SolverParams& params);

/// Applies (rho1 D^T D + rho2 D_theta^T D_theta + rho3 I) in the spatial domain.
Image apply_x_normal_operator(const Image& x, const SolverParams& params);

/// Dual ascent on the constraint residuals of the current primal state.
Multipliers update_multipliers(const SolverState& state, const Image& y,
                               const SolverParams& params);

/// Runs ADMM from X = Y until the relative change drops to eps_stop or n_max
/// iterations elapse. Throws SolverDiverged if a sub-step goes non-finite.
DestripeResult destripe(const Image& y, const SolverParams& params);

/// CSV with header k,rel_change,objective,residual_tv,residual_ov,residual_l1.
void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace);

}  // namespace obds
