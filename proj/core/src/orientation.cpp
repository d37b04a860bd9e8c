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

#include "obds/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "obds/error.hpp"
#include "obds/fft.hpp"

namespace obds {
namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double reduce_180(double deg) {
  double r = std::fmod(deg, 180.0);
  if (r < 0.0) r += 180.0;
  // fmod can land exactly on 180 after the correction for tiny negatives.
  if (r >= 180.0) r -= 180.0;
  return r;
}

}  // namespace

double offset_angle_deg(int a, int b) {
  // x to the right (= b), y upward (= -a); angle counter-clockwise from +y.
  return reduce_180(std::atan2(-static_cast<double>(b), -static_cast<double>(a)) * kDeg);
}

double angular_distance_deg(double x, double y) {
  const double d = std::abs(reduce_180(x) - reduce_180(y));
  return std::min(d, 180.0 - d);
}

std::vector<CandidateDirection> enumerate_candidates(int r) {
  if (r < 1) throw InvalidInput("enumerate_candidates: template radius must be >= 1");
  std::vector<CandidateDirection> out;
  out.push_back({-1, 0, 0.0});
  for (int b = -r; b <= -1; ++b)
    for (int a = -r; a <= r; ++a)
      if (std::gcd(std::abs(a), std::abs(b)) == 1) out.push_back({a, b, offset_angle_deg(a, b)});
  std::sort(out.begin(), out.end(),
            [](const CandidateDirection& x, const CandidateDirection& y) {
              return x.theta_deg < y.theta_deg;
            });
  return out;
}

FrequencyOffset dominant_frequency(const Image& e) {
  require_finite(e, "dominant_frequency");
  const std::size_t rows = e.rows();
  const std::size_t cols = e.cols();
  Fft2d fft(rows, cols);
  const auto spectrum = fft.forward(e);

  const auto signed_index = [](std::size_t k, std::size_t n) {
    const long v = static_cast<long>(k);
    return v > static_cast<long>(n) / 2 ? v - static_cast<long>(n) : v;
  };

  double best = 0.0;
  FrequencyOffset best_f{};
  bool found = false;
  // Relative floor below which coefficients count as numerical noise.
  double total = 0.0;
  for (const auto& c : spectrum) total = std::max(total, std::abs(c));
  const double floor = total * 1e-12;

  for (std::size_t u = 0; u < rows; ++u)
    for (std::size_t v = 0; v < cols; ++v) {
      if (u == 0 && v == 0) continue;
      long du = signed_index(u, rows);
      long dv = signed_index(v, cols);
      // Canonical representative of the conjugate pair (du,dv) ~ (-du,-dv).
      // At Nyquist the negated index aliases to itself, which is fine.
      if (du > 0 || (du == 0 && dv < 0)) {
        du = -du;
        dv = -dv;
      }
      const double mag = std::abs(spectrum[u * cols + v]);
      if (mag <= floor) continue;
      const FrequencyOffset f{static_cast<int>(du), static_cast<int>(dv)};
      const bool better =
          !found || mag > best ||
          (mag == best && std::pair(f.du, f.dv) < std::pair(best_f.du, best_f.dv));
      if (better) {
        best = mag;
        best_f = f;
        found = true;
      }
    }
  if (!found || best <= 0.0)
    throw OrientationUndeterminable("orientation undeterminable: no non-DC spectral energy");
  return best_f;
}

double frequency_to_angle(FrequencyOffset f, std::size_t rows, std::size_t cols) {
  if (f.du == 0 && f.dv == 0) throw InvalidInput("frequency_to_angle: DC has no direction");
  // Physical frequency: (row component, col component) in cycles per pixel.
  const double fr = static_cast<double>(f.du) / static_cast<double>(rows);
  const double fc = static_cast<double>(f.dv) / static_cast<double>(cols);
  // Stripes run perpendicular to the frequency vector: (drow, dcol) = (-fc, fr).
  const double drow = -fc;
  const double dcol = fr;
  return reduce_180(std::atan2(-dcol, -drow) * kDeg);
}

CandidateDirection select_candidate(double theta_stripe_deg,
                                    const std::vector<CandidateDirection>& candidates) {
  if (candidates.empty()) throw InvalidInput("select_candidate: no candidates");
  const CandidateDirection* best = nullptr;
  double best_d = 0.0;
  for (const auto& c : candidates) {
    const double d = angular_distance_deg(c.theta_deg, theta_stripe_deg);
    if (!best || d < best_d || (d == best_d && c.theta_deg < best->theta_deg)) {
      best = &c;
      best_d = d;
    }
  }
  return *best;
}

OrientationResult estimate_orientation(const Image& y, const GuidedFilterParams& gf, int r) {
  const auto candidates = enumerate_candidates(r);
  const Image e = background_eliminate(y, gf);
  OrientationResult res;
  res.dominant_freq = dominant_frequency(e);
  res.theta_stripe_deg = frequency_to_angle(res.dominant_freq, y.rows(), y.cols());
  res.chosen = select_candidate(res.theta_stripe_deg, candidates);
  return res;
}

}  // namespace obds
