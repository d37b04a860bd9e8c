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

#include "obds/guided_filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "obds/error.hpp"

namespace obds {

void GuidedFilterParams::validate() const {
  if (radius < 1) throw InvalidInput("guided filter radius must be >= 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("guided filter eps must be > 0");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("enhancement factor t must be > 0");
}

Image box_mean(const Image& img, int radius) {
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  // Summed-area table with a zero border row/column.
  std::vector<double> sat((rows + 1) * (cols + 1), 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum += img(i, j);
      sat[(i + 1) * (cols + 1) + j + 1] = sat[i * (cols + 1) + j + 1] + row_sum;
    }
  }
  const auto r = static_cast<std::size_t>(radius);
  Image out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t i0 = i >= r ? i - r : 0;
    const std::size_t i1 = std::min(rows, i + r + 1);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t j0 = j >= r ? j - r : 0;
      const std::size_t j1 = std::min(cols, j + r + 1);
      const double s = sat[i1 * (cols + 1) + j1] - sat[i0 * (cols + 1) + j1] -
                       sat[i1 * (cols + 1) + j0] + sat[i0 * (cols + 1) + j0];
      out(i, j) = s / static_cast<double>((i1 - i0) * (j1 - j0));
    }
  }
  return out;
}

Image guided_self_filter(const Image& y, const GuidedFilterParams& p) {
  p.validate();
  require_finite(y, "guided_self_filter");
  const auto win = static_cast<std::size_t>(2 * p.radius + 1);
  if (y.rows() < win || y.cols() < win)
    throw InvalidInput("guided_self_filter: image smaller than the " + std::to_string(win) + "x" +
                       std::to_string(win) + " window");

  Image sq = y;
  for (double& v : sq.pixels()) v *= v;
  const Image mean_y = box_mean(y, p.radius);
  const Image mean_sq = box_mean(sq, p.radius);

  Image a(y.rows(), y.cols());
  Image b(y.rows(), y.cols());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double m = mean_y.pixels()[k];
    const double var = std::max(0.0, mean_sq.pixels()[k] - m * m);
    const double ak = var / (var + p.eps);
    a.pixels()[k] = ak;
    b.pixels()[k] = m * (1.0 - ak);
  }
  const Image mean_a = box_mean(a, p.radius);
  const Image mean_b = box_mean(b, p.radius);

  Image out(y.rows(), y.cols());
  for (std::size_t k = 0; k < y.size(); ++k)
    out.pixels()[k] = mean_a.pixels()[k] * y.pixels()[k] + mean_b.pixels()[k];
  return out;
}

Image background_eliminate(const Image& y, const GuidedFilterParams& p) {
  Image e = y - guided_self_filter(y, p);
  e *= p.t;
  return e;
}

}  // namespace obds
