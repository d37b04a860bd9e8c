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

#include "obds/solver.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "obds/error.hpp"

namespace obds {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(name) + " must be > 0");
}

void check_finite(const Image& img, const char* step, int k) {
  if (!all_finite(img)) throw SolverDiverged(step, k);
}

double frob_diff(const Image& a, const Image& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double d = a.pixels()[n] - b.pixels()[n];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

void SolverParams::validate() const {
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  require_positive(rho1, "rho1");
  require_positive(rho2, "rho2");
  require_positive(rho3, "rho3");
  if (!(eps_stop >= 0.0)) throw InvalidInput("eps_stop must be >= 0");
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
  if (direction.a == 0 && direction.b == 0) throw InvalidInput("direction must be non-zero");
}

SolverState SolverState::initial(const Image& y) {
  const Image zero(y.rows(), y.cols(), 0.0);
  return {y, zero, zero, zero, zero, zero, zero, zero, zero, 0};
}

OperatorSpectra OperatorSpectra::make(OffsetOperator direction, std::size_t rows,
                                      std::size_t cols) {
  return {operator_spectrum(horizontal_diff(), rows, cols),
          operator_spectrum(vertical_diff(), rows, cols),
          operator_spectrum(direction, rows, cols)};
}

double total_variation(const Image& x) {
  const Image gh = apply_offset_diff(x, horizontal_diff());
  const Image gv = apply_offset_diff(x, vertical_diff());
  double tv = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n)
    tv += std::hypot(gh.pixels()[n], gv.pixels()[n]);
  return tv;
}

double objective(const Image& x, const Image& y, const SolverParams& params) {
  require_same_shape(x, y, "objective");
  const Image s = x - y;
  return total_variation(x) + params.lambda1 * l1_norm(apply_offset_diff(s, params.direction.op())) +
         params.lambda2 * l1_norm(s);
}

double soft_shrink(double alpha, double gamma) noexcept {
  const double m = std::abs(alpha) - gamma;
  if (m <= 0.0) return 0.0;
  return alpha > 0.0 ? m : -m;
}

Image soft_shrink(const Image& alpha, double gamma) {
  if (!(gamma >= 0.0)) throw InvalidInput("soft_shrink: gamma must be >= 0");
  Image out = alpha;
  for (double& v : out.pixels()) v = soft_shrink(v, gamma);
  return out;
}

Image update_V(const SolverState& state, const Image& y, const SolverParams& params) {
  Image arg = apply_offset_diff(state.x - y, params.direction.op());
  const double inv = 1.0 / params.rho2;
  for (std::size_t n = 0; n < arg.size(); ++n) arg.pixels()[n] += state.p2.pixels()[n] * inv;
  return soft_shrink(arg, params.lambda1 / params.rho2);
}

Image update_H(const SolverState& state, const Image& y, const SolverParams& params) {
  Image arg = state.x - y;
  const double inv = 1.0 / params.rho3;
  for (std::size_t n = 0; n < arg.size(); ++n) arg.pixels()[n] += state.p3.pixels()[n] * inv;
  return soft_shrink(arg, params.lambda2 / params.rho3);
}

std::pair<Image, Image> update_d(const SolverState& state, const SolverParams& params) {
  Image ch = apply_offset_diff(state.x, horizontal_diff());
  Image cv = apply_offset_diff(state.x, vertical_diff());
  const double inv = 1.0 / params.rho1;
  for (std::size_t n = 0; n < ch.size(); ++n) {
    const double a = ch.pixels()[n] + state.ph.pixels()[n] * inv;
    const double b = cv.pixels()[n] + state.pv.pixels()[n] * inv;
    const double w = std::hypot(a, b);
    const double factor = w > 0.0 ? std::max(w - inv, 0.0) / w : 0.0;
    ch.pixels()[n] = factor * a;
    cv.pixels()[n] = factor * b;
  }
  return {std::move(ch), std::move(cv)};
}

Image x_update_rhs(const SolverState& state, const Image& y, const SolverParams& params) {
  const std::size_t n = y.size();
  Image rhs(y.rows(), y.cols(), 0.0);
  auto out = rhs.pixels();

  if (params.rho1 != 0.0) {
    Image th = state.dh;
    Image tv = state.dv;
    for (std::size_t k = 0; k < n; ++k) {
      th.pixels()[k] = params.rho1 * th.pixels()[k] - state.ph.pixels()[k];
      tv.pixels()[k] = params.rho1 * tv.pixels()[k] - state.pv.pixels()[k];
    }
    const Image ah = apply_offset_diff_adjoint(th, horizontal_diff());
    const Image av = apply_offset_diff_adjoint(tv, vertical_diff());
    for (std::size_t k = 0; k < n; ++k) out[k] += ah.pixels()[k] + av.pixels()[k];
  }
  if (params.rho2 != 0.0) {
    Image t = apply_offset_diff(y, params.direction.op());
    for (std::size_t k = 0; k < n; ++k)
      t.pixels()[k] = params.rho2 * (t.pixels()[k] + state.v.pixels()[k]) - state.p2.pixels()[k];
    const Image at = apply_offset_diff_adjoint(t, params.direction.op());
    for (std::size_t k = 0; k < n; ++k) out[k] += at.pixels()[k];
  }
  for (std::size_t k = 0; k < n; ++k)
    out[k] += params.rho3 * (y.pixels()[k] + state.h.pixels()[k]) - state.p3.pixels()[k];
  return rhs;
}

Image apply_x_normal_operator(const Image& x, const SolverParams& params) {
  Image out = x * params.rho3;
  if (params.rho1 != 0.0) {
    for (OffsetOperator op : {horizontal_diff(), vertical_diff()}) {
      Image t = apply_offset_diff_adjoint(apply_offset_diff(x, op), op);
      out += t * params.rho1;
    }
  }
  if (params.rho2 != 0.0) {
    const OffsetOperator op = params.direction.op();
    out += apply_offset_diff_adjoint(apply_offset_diff(x, op), op) * params.rho2;
  }
  return out;
}

Image update_X(const SolverState& state, const Image& y, const SolverParams& params,
               const OperatorSpectra& spectra, Fft2d& fft) {
  require_positive(params.rho3, "rho3");
  const Image rhs = x_update_rhs(state, y, params);
  auto f = fft.forward(rhs);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double denom = params.rho1 * (std::norm(spectra.h[k]) + std::norm(spectra.v[k])) +
                         params.rho2 * std::norm(spectra.theta[k]) + params.rho3;
    f[k] /= denom;
  }
  return fft.inverse_real(f);
}

Image update_X(const SolverState& state, const Image& y, const SolverParams& params,
               const OperatorSpectra& spectra) {
  Fft2d fft(y.rows(), y.cols());
  return update_X(state, y, params, spectra, fft);
}

Multipliers update_multipliers(const SolverState& state, const Image& y,
                               const SolverParams& params) {
  const Image gh = apply_offset_diff(state.x, horizontal_diff());
  const Image gv = apply_offset_diff(state.x, vertical_diff());
  const Image s = state.x - y;
  const Image gt = apply_offset_diff(s, params.direction.op());
  Multipliers m{state.ph, state.pv, state.p2, state.p3};
  for (std::size_t k = 0; k < y.size(); ++k) {
    m.ph.pixels()[k] += params.rho1 * (gh.pixels()[k] - state.dh.pixels()[k]);
    m.pv.pixels()[k] += params.rho1 * (gv.pixels()[k] - state.dv.pixels()[k]);
    m.p2.pixels()[k] += params.rho2 * (gt.pixels()[k] - state.v.pixels()[k]);
    m.p3.pixels()[k] += params.rho3 * (s.pixels()[k] - state.h.pixels()[k]);
  }
  return m;
}

DestripeResult destripe(const Image& y, const SolverParams& params) {
  params.validate();
  require_finite(y, "destripe");
  const OffsetOperator dir = params.direction.op();
  const OperatorSpectra spectra = OperatorSpectra::make(dir, y.rows(), y.cols());
  Fft2d fft(y.rows(), y.cols());

  SolverState st = SolverState::initial(y);
  DestripeResult result;
  while (st.k < params.n_max) {
    const int k = st.k + 1;
    st.v = update_V(st, y, params);
    check_finite(st.v, "update_V", k);
    st.h = update_H(st, y, params);
    check_finite(st.h, "update_H", k);
    auto [dh, dv] = update_d(st, params);
    check_finite(dh, "update_d", k);
    check_finite(dv, "update_d", k);
    st.dh = std::move(dh);
    st.dv = std::move(dv);

    Image x_next = update_X(st, y, params, spectra, fft);
    check_finite(x_next, "update_X", k);
    const double norm_prev = l2_norm(st.x);
    const double change = frob_diff(st.x, x_next);
    const double rel = norm_prev > 0.0 ? change / norm_prev : change;
    st.x = std::move(x_next);

    Multipliers m = update_multipliers(st, y, params);
    check_finite(m.ph, "update_multipliers", k);
    check_finite(m.pv, "update_multipliers", k);
    check_finite(m.p2, "update_multipliers", k);
    check_finite(m.p3, "update_multipliers", k);
    st.ph = std::move(m.ph);
    st.pv = std::move(m.pv);
    st.p2 = std::move(m.p2);
    st.p3 = std::move(m.p3);
    st.k = k;

    IterationRecord rec;
    rec.k = k;
    rec.rel_change = rel;
    rec.objective = objective(st.x, y, params);
    {
      const Image gh = apply_offset_diff(st.x, horizontal_diff());
      const Image gv = apply_offset_diff(st.x, vertical_diff());
      rec.residual_tv = std::hypot(frob_diff(gh, st.dh), frob_diff(gv, st.dv));
      const Image s = st.x - y;
      rec.residual_ov = frob_diff(apply_offset_diff(s, dir), st.v);
      rec.residual_l1 = frob_diff(s, st.h);
    }
    result.trace.push_back(rec);
    if (rel <= params.eps_stop) {
      result.converged = true;
      break;
    }
  }
  result.s = y - st.x;
  result.x = std::move(st.x);
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace) {
  out << "k,rel_change,objective,residual_tv,residual_ov,residual_l1\n";
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << std::setprecision(10);
  for (const auto& r : trace)
    out << r.k << ',' << r.rel_change << ',' << r.objective << ',' << r.residual_tv << ','
        << r.residual_ov << ',' << r.residual_l1 << '\n';
  out.flags(old_flags);
  out.precision(old_prec);
}

}  // namespace obds
