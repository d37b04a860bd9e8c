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

#include "obds/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "obds/error.hpp"

namespace obds {

Image::Image(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw InvalidInput("Image: rows and cols must be positive");
}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (rows == 0 || cols == 0) throw InvalidInput("Image: rows and cols must be positive");
  if (pixels_.size() != rows * cols)
    throw InvalidInput("Image: pixel count " + std::to_string(pixels_.size()) +
                       " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
}

Image Image::crop(std::size_t row0, std::size_t col0, std::size_t height,
                  std::size_t width) const {
  if (height == 0 || width == 0 || row0 + height > rows_ || col0 + width > cols_)
    throw InvalidInput("Image::crop: window outside image bounds");
  Image out(height, width);
  for (std::size_t i = 0; i < height; ++i)
    std::copy_n(pixels_.begin() + static_cast<std::ptrdiff_t>((row0 + i) * cols_ + col0), width,
                out.pixels_.begin() + static_cast<std::ptrdiff_t>(i * width));
  return out;
}

Image& Image::operator+=(const Image& rhs) {
  require_same_shape(*this, rhs, "operator+=");
  for (std::size_t k = 0; k < pixels_.size(); ++k) pixels_[k] += rhs.pixels_[k];
  return *this;
}

Image& Image::operator-=(const Image& rhs) {
  require_same_shape(*this, rhs, "operator-=");
  for (std::size_t k = 0; k < pixels_.size(); ++k) pixels_[k] -= rhs.pixels_[k];
  return *this;
}

Image& Image::operator+=(double s) {
  for (auto& v : pixels_) v += s;
  return *this;
}

Image& Image::operator*=(double s) {
  for (auto& v : pixels_) v *= s;
  return *this;
}

Image operator+(Image lhs, const Image& rhs) { return lhs += rhs; }
Image operator-(Image lhs, const Image& rhs) { return lhs -= rhs; }
Image operator+(Image lhs, double s) { return lhs += s; }
Image operator-(Image lhs, double s) { return lhs += -s; }
Image operator-(double s, Image rhs) {
  for (auto& v : rhs.pixels()) v = s - v;
  return rhs;
}
Image operator*(Image lhs, double s) { return lhs *= s; }
Image operator*(double s, Image rhs) { return rhs *= s; }

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b))
    throw InvalidInput(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()) + ")");
}

bool all_finite(const Image& img) noexcept {
  auto px = img.pixels();
  return std::all_of(px.begin(), px.end(), [](double v) { return std::isfinite(v); });
}

void require_finite(const Image& img, const char* what) {
  if (!all_finite(img)) throw InvalidInput(std::string(what) + ": non-finite pixel values");
}

double sum(const Image& img) noexcept {
  auto px = img.pixels();
  return std::accumulate(px.begin(), px.end(), 0.0);
}

double mean(const Image& img) noexcept {
  return img.empty() ? 0.0 : sum(img) / static_cast<double>(img.size());
}

double l1_norm(const Image& img) noexcept {
  double s = 0.0;
  for (double v : img.pixels()) s += std::abs(v);
  return s;
}

double l2_norm(const Image& img) noexcept {
  double s = 0.0;
  for (double v : img.pixels()) s += v * v;
  return std::sqrt(s);
}

double dot(const Image& a, const Image& b) {
  require_same_shape(a, b, "dot");
  auto pa = a.pixels();
  auto pb = b.pixels();
  return std::inner_product(pa.begin(), pa.end(), pb.begin(), 0.0);
}

Image normalize(const Image& raw) {
  require_finite(raw, "normalize");
  auto px = raw.pixels();
  const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
  Image out(raw.rows(), raw.cols(), 0.0);
  const double range = *hi - *lo;
  if (range <= 0.0) return out;
  auto dst = out.pixels();
  for (std::size_t k = 0; k < px.size(); ++k) dst[k] = (px[k] - *lo) / range;
  return out;
}

OffsetOperator::OffsetOperator(int row_offset, int col_offset) : a(row_offset), b(col_offset) {
  if (a == 0 && b == 0) throw InvalidInput("OffsetOperator: (0,0) is not a difference");
}

namespace {

// Non-negative representative of (i + off) mod n.
inline std::size_t wrap(std::size_t i, long off, std::size_t n) {
  const long m = static_cast<long>(n);
  long r = (static_cast<long>(i) + off) % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

// out(i,j) = img(i,j) - img(i + sa, j + sb) with periodic wrap.
Image shifted_difference(const Image& img, long sa, long sb) {
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  Image out(rows, cols);
  std::vector<std::size_t> jmap(cols);
  for (std::size_t j = 0; j < cols; ++j) jmap[j] = wrap(j, sb, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t si = wrap(i, sa, rows);
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = img(i, j) - img(si, jmap[j]);
  }
  return out;
}

}  // namespace

Image apply_offset_diff(const Image& img, OffsetOperator op) {
  return shifted_difference(img, op.a, op.b);
}

Image apply_offset_diff_adjoint(const Image& img, OffsetOperator op) {
  return shifted_difference(img, -op.a, -op.b);
}

std::vector<std::complex<double>> operator_spectrum(OffsetOperator op, std::size_t rows,
                                                    std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("operator_spectrum: empty grid");
  std::vector<std::complex<double>> out(rows * cols);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t u = 0; u < rows; ++u) {
    // Reduce the phase index exactly before converting to an angle.
    const long pu = static_cast<long>(wrap(0, static_cast<long>(u) * op.a, rows));
    for (std::size_t v = 0; v < cols; ++v) {
      const long pv = static_cast<long>(wrap(0, static_cast<long>(v) * op.b, cols));
      const double phase = two_pi * (static_cast<double>(pu) / static_cast<double>(rows) +
                                     static_cast<double>(pv) / static_cast<double>(cols));
      out[u * cols + v] = 1.0 - std::polar(1.0, phase);
    }
  }
  return out;
}

RotatedExtent rotated_extent(std::size_t rows, std::size_t cols, double angle_deg) {
  // Continuous extents between first and last pixel centers.
  const double w = static_cast<double>(cols) - 1.0;
  const double h = static_cast<double>(rows) - 1.0;
  const double rad = angle_deg * std::numbers::pi / 180.0;
  const double sin_a = std::abs(std::sin(rad));
  const double cos_a = std::abs(std::cos(rad));
  double wr = w;
  double hr = h;
  if (w > 0.0 && h > 0.0) {
    const bool width_longer = w >= h;
    const double side_long = width_longer ? w : h;
    const double side_short = width_longer ? h : w;
    if (side_short <= 2.0 * sin_a * cos_a * side_long || std::abs(sin_a - cos_a) < 1e-10) {
      const double x = 0.5 * side_short;
      wr = width_longer ? x / sin_a : x / cos_a;
      hr = width_longer ? x / cos_a : x / sin_a;
    } else {
      const double cos_2a = cos_a * cos_a - sin_a * sin_a;
      wr = (w * cos_a - h * sin_a) / cos_2a;
      hr = (h * cos_a - w * sin_a) / cos_2a;
    }
  }
  auto count = [](double extent) {
    return extent <= 0.0 ? std::size_t{1} : static_cast<std::size_t>(std::floor(extent + 1e-9)) + 1;
  };
  return {count(hr), count(wr)};
}

namespace {

struct RotationMap {
  double cos_a, sin_a;
  double src_ci, src_cj;
  double dst_ci, dst_cj;

  // Source (row, col) for destination pixel (i, j).
  std::pair<double, double> source(double i, double j) const {
    const double x = j - dst_cj;
    const double y = dst_ci - i;
    const double sx = x * cos_a + y * sin_a;
    const double sy = -x * sin_a + y * cos_a;
    return {src_ci - sy, src_cj + sx};
  }
};

bool corners_inside(const RotationMap& m, std::size_t out_rows, std::size_t out_cols,
                    std::size_t rows, std::size_t cols) {
  constexpr double tol = 1e-9;
  const double last_i = static_cast<double>(out_rows) - 1.0;
  const double last_j = static_cast<double>(out_cols) - 1.0;
  for (double i : {0.0, last_i})
    for (double j : {0.0, last_j}) {
      auto [si, sj] = m.source(i, j);
      if (si < -tol || sj < -tol || si > static_cast<double>(rows) - 1.0 + tol ||
          sj > static_cast<double>(cols) - 1.0 + tol)
        return false;
    }
  return true;
}

double sample_bilinear(const Image& img, double si, double sj) {
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  si = std::clamp(si, 0.0, static_cast<double>(rows - 1));
  sj = std::clamp(sj, 0.0, static_cast<double>(cols - 1));
  auto i0 = static_cast<std::size_t>(std::floor(si));
  auto j0 = static_cast<std::size_t>(std::floor(sj));
  if (i0 + 1 >= rows) i0 = rows >= 2 ? rows - 2 : 0;
  if (j0 + 1 >= cols) j0 = cols >= 2 ? cols - 2 : 0;
  const std::size_t i1 = std::min(i0 + 1, rows - 1);
  const std::size_t j1 = std::min(j0 + 1, cols - 1);
  const double fi = si - static_cast<double>(i0);
  const double fj = sj - static_cast<double>(j0);
  const double top = img(i0, j0) * (1.0 - fj) + img(i0, j1) * fj;
  const double bottom = img(i1, j0) * (1.0 - fj) + img(i1, j1) * fj;
  return top * (1.0 - fi) + bottom * fi;
}

double sample_nearest(const Image& img, double si, double sj) {
  const auto i = static_cast<std::size_t>(
      std::clamp(std::lround(si), 0L, static_cast<long>(img.rows()) - 1));
  const auto j = static_cast<std::size_t>(
      std::clamp(std::lround(sj), 0L, static_cast<long>(img.cols()) - 1));
  return img(i, j);
}

}  // namespace

Image rotate(const Image& img, double angle_deg, Interpolation method) {
  if (img.empty()) throw InvalidInput("rotate: empty image");
  if (!std::isfinite(angle_deg)) throw InvalidInput("rotate: non-finite angle");
  if (std::fmod(angle_deg, 360.0) == 0.0) {
    if (img.rows() < 16 || img.cols() < 16)
      throw InvalidInput("rotate: output smaller than 16x16");
    return img;
  }

  const double rad = angle_deg * std::numbers::pi / 180.0;
  RotatedExtent ext = rotated_extent(img.rows(), img.cols(), angle_deg);
  RotationMap map{std::cos(rad), std::sin(rad),
                  (static_cast<double>(img.rows()) - 1.0) / 2.0,
                  (static_cast<double>(img.cols()) - 1.0) / 2.0, 0.0, 0.0};
  // Shrink until all four corners sample inside the source.
  for (;;) {
    map.dst_ci = (static_cast<double>(ext.rows) - 1.0) / 2.0;
    map.dst_cj = (static_cast<double>(ext.cols) - 1.0) / 2.0;
    if (corners_inside(map, ext.rows, ext.cols, img.rows(), img.cols())) break;
    if (ext.rows < 16 || ext.cols < 16) break;
    if (ext.rows >= ext.cols) --ext.rows; else --ext.cols;
  }
  if (ext.rows < 16 || ext.cols < 16)
    throw InvalidInput("rotate: interior crop " + std::to_string(ext.rows) + "x" +
                       std::to_string(ext.cols) + " is smaller than 16x16");

  Image out(ext.rows, ext.cols);
  for (std::size_t i = 0; i < ext.rows; ++i)
    for (std::size_t j = 0; j < ext.cols; ++j) {
      auto [si, sj] = map.source(static_cast<double>(i), static_cast<double>(j));
      out(i, j) = method == Interpolation::nearest ? sample_nearest(img, si, sj)
                                                   : sample_bilinear(img, si, sj);
    }
  return out;
}

Image center_crop(const Image& img, std::size_t rows, std::size_t cols) {
  if (rows > img.rows() || cols > img.cols())
    throw InvalidInput("center_crop: requested " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " exceeds " + std::to_string(img.rows()) + "x" +
                       std::to_string(img.cols()));
  return img.crop((img.rows() - rows) / 2, (img.cols() - cols) / 2, rows, cols);
}

}  // namespace obds
