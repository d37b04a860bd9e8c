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

// Independent reference implementations used only by tests. Nothing here
// calls into the FFT, box-filter or shrinkage code paths being checked.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "obds/image.hpp"

namespace obds::testing {

// Owning copy of the pixels, safe to iterate when img is a temporary.
inline std::vector<double> values(const Image& img) {
  return {img.pixels().begin(), img.pixels().end()};
}

inline Image random_image(std::size_t rows, std::size_t cols, std::uint64_t seed,
                          double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  Image img(rows, cols);
  for (double& v : img.pixels()) v = d(rng);
  return img;
}

/// Dense row-major matrix of the periodic difference (a, b) on a rows x cols
/// grid, indexed by flattened pixel positions.
inline std::vector<double> dense_difference(int a, int b, std::size_t rows, std::size_t cols) {
  const std::size_t n = rows * cols;
  std::vector<double> m(n * n, 0.0);
  const long r = static_cast<long>(rows), c = static_cast<long>(cols);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) {
      const long row = i * c + j;
      const long ii = ((i + a) % r + r) % r;
      const long jj = ((j + b) % c + c) % c;
      m[static_cast<std::size_t>(row) * n + static_cast<std::size_t>(row)] += 1.0;
      m[static_cast<std::size_t>(row) * n + static_cast<std::size_t>(ii * c + jj)] -= 1.0;
    }
  return m;
}

inline std::vector<double> matvec(const std::vector<double>& m, std::span<const double> x,
                                  bool transpose = false) {
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      y[r] += (transpose ? m[c * n + r] : m[r * n + c]) * x[c];
  return y;
}

/// O(n^2) DFT with the forward sign convention exp(-2 pi i (u i/R + v j/C)).
inline std::vector<std::complex<double>> naive_dft(const Image& g) {
  const std::size_t R = g.rows(), C = g.cols();
  std::vector<std::complex<double>> out(R * C);
  for (std::size_t u = 0; u < R; ++u)
    for (std::size_t v = 0; v < C; ++v) {
      std::complex<double> s = 0.0;
      for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
          const double ph = -2.0 * std::numbers::pi *
                            (static_cast<double>(u * i % R) / static_cast<double>(R) +
                             static_cast<double>(v * j % C) / static_cast<double>(C));
          s += g(i, j) * std::polar(1.0, ph);
        }
      out[u * C + v] = s;
    }
  return out;
}

/// Self-guided filter evaluated window by window, no summed-area tables.
inline Image naive_guided_self_filter(const Image& y, int radius, double eps) {
  const long R = static_cast<long>(y.rows()), C = static_cast<long>(y.cols());
  Image a(y.rows(), y.cols()), b(y.rows(), y.cols());
  for (long i = 0; i < R; ++i)
    for (long j = 0; j < C; ++j) {
      double s = 0.0;
      int n = 0;
      for (long di = -radius; di <= radius; ++di)
        for (long dj = -radius; dj <= radius; ++dj) {
          const long ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= R || jj >= C) continue;
          s += y(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
          ++n;
        }
      const double m = s / n;
      double var = 0.0;
      for (long di = -radius; di <= radius; ++di)
        for (long dj = -radius; dj <= radius; ++dj) {
          const long ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= R || jj >= C) continue;
          const double d = y(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj)) - m;
          var += d * d;
        }
      var /= n;
      const double ak = var / (var + eps);
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = ak;
      b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m - ak * m;
    }
  Image out(y.rows(), y.cols());
  for (long i = 0; i < R; ++i)
    for (long j = 0; j < C; ++j) {
      double sa = 0.0, sb = 0.0;
      int n = 0;
      for (long di = -radius; di <= radius; ++di)
        for (long dj = -radius; dj <= radius; ++dj) {
          const long ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= R || jj >= C) continue;
          sa += a(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
          sb += b(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
          ++n;
        }
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          sa / n * y(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) + sb / n;
    }
  return out;
}

/// Coarse-to-fine 1-D minimization of a convex function on [lo, hi].
inline double grid_argmin_1d(const std::function<double(double)>& f, double lo, double hi,
                             int levels = 12, int points = 41) {
  double best = lo;
  for (int level = 0; level < levels; ++level) {
    double best_val = f(lo);
    best = lo;
    const double step = (hi - lo) / (points - 1);
    for (int k = 1; k < points; ++k) {
      const double x = lo + step * k;
      const double v = f(x);
      if (v < best_val) {
        best_val = v;
        best = x;
      }
    }
    lo = best - step;
    hi = best + step;
  }
  return best;
}

/// argmin_v weight |v| + (rho / 2) (v - c)^2 by grid search.
inline double prox_l1_oracle(double c, double weight, double rho) {
  const double span = std::abs(c) + weight / rho + 1.0;
  return grid_argmin_1d([&](double v) { return weight * std::abs(v) + 0.5 * rho * (v - c) * (v - c); },
                        -span, span);
}

/// argmin over (x, y) of ||(x, y)||_2 + (rho / 2) ((x - c1)^2 + (y - c2)^2):
/// outer search over the polar angle, inner over the radius.
inline std::pair<double, double> prox_group_oracle(double c1, double c2, double rho) {
  const auto value = [&](double r, double phi) {
    const double x = r * std::cos(phi), y = r * std::sin(phi);
    return std::abs(r) + 0.5 * rho * ((x - c1) * (x - c1) + (y - c2) * (y - c2));
  };
  const double rmax = std::hypot(c1, c2) + 1.0;
  const auto best_radius = [&](double phi) {
    return grid_argmin_1d([&](double r) { return value(r, phi); }, 0.0, rmax);
  };
  // The objective restricted to the optimal radius is unimodal in phi on
  // a window around its minimizer; scan the full circle first.
  double best_phi = 0.0, best_val = 1e300;
  for (int k = 0; k < 720; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 720.0;
    const double v = value(best_radius(phi), phi);
    if (v < best_val) {
      best_val = v;
      best_phi = phi;
    }
  }
  const double step = 2.0 * std::numbers::pi / 720.0;
  const double phi = grid_argmin_1d([&](double p) { return value(best_radius(p), p); },
                                    best_phi - step, best_phi + step, 8, 21);
  const double r = best_radius(phi);
  if (std::abs(r) < 1e-9) return {0.0, 0.0};
  return {r * std::cos(phi), r * std::sin(phi)};
}

/// Mean SSIM over valid 11x11 windows with explicit 2-D Gaussian weights.
inline double naive_ssim(const Image& a, const Image& b) {
  constexpr int w = 11;
  constexpr double sigma = 1.5;
  double weights[w][w];
  double total = 0.0;
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      const double di = i - 5, dj = j - 5;
      weights[i][j] = std::exp(-(di * di + dj * dj) / (2 * sigma * sigma));
      total += weights[i][j];
    }
  for (auto& row : weights)
    for (double& v : row) v /= total;
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + w <= a.rows(); ++i)
    for (std::size_t j = 0; j + w <= a.cols(); ++j) {
      double ma = 0, mb = 0;
      for (int di = 0; di < w; ++di)
        for (int dj = 0; dj < w; ++dj) {
          ma += weights[di][dj] * a(i + di, j + dj);
          mb += weights[di][dj] * b(i + di, j + dj);
        }
      double va = 0, vb = 0, cov = 0;
      for (int di = 0; di < w; ++di)
        for (int dj = 0; dj < w; ++dj) {
          const double x = a(i + di, j + dj) - ma, y = b(i + di, j + dj) - mb;
          va += weights[di][dj] * x * x;
          vb += weights[di][dj] * y * y;
          cov += weights[di][dj] * x * y;
        }
      acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  return acc / static_cast<double>(count);
}

}  // namespace obds::testing
