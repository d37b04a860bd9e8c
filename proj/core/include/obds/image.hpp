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
#include <cstddef>
#include <span>
#include <vector>

namespace obds {

/// Dense single-band image, row-major. Row index grows downward, column
/// index grows rightward.
class Image {
 public:
  Image() = default;
  Image(std::size_t rows, std::size_t cols, double fill = 0.0);
  Image(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return pixels_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return pixels_[i * cols_ + j]; }

  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> pixels() const noexcept { return pixels_; }

  bool same_shape(const Image& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// Copy of the sub-rectangle starting at (row0, col0).
  Image crop(std::size_t row0, std::size_t col0, std::size_t height,
             std::size_t width) const;

  Image& operator+=(const Image& rhs);
  Image& operator-=(const Image& rhs);
  Image& operator+=(double s);
  Image& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

Image operator+(Image lhs, const Image& rhs);
Image operator-(Image lhs, const Image& rhs);
Image operator+(Image lhs, double s);
Image operator-(Image lhs, double s);
Image operator-(double s, Image rhs);
Image operator*(Image lhs, double s);
Image operator*(double s, Image rhs);

/// Throws InvalidInput unless a and b have equal dimensions.
void require_same_shape(const Image& a, const Image& b, const char* what);

/// Throws InvalidInput if any pixel is NaN or infinite.
void require_finite(const Image& img, const char* what);

bool all_finite(const Image& img) noexcept;

double sum(const Image& img) noexcept;
double mean(const Image& img) noexcept;
double l1_norm(const Image& img) noexcept;
double l2_norm(const Image& img) noexcept;
double dot(const Image& a, const Image& b);

/// Affine min-max rescale to [0, 1]. A constant image maps to all zeros.
Image normalize(const Image& raw);

/// Integer pixel displacement defining D(i,j) = img(i,j) - img(i+a, j+b)
/// with periodic wraparound.
struct OffsetOperator {
  int a = 0;  ///< row offset
  int b = 0;  ///< column offset

  OffsetOperator() = default;
  OffsetOperator(int row_offset, int col_offset);

  friend bool operator==(const OffsetOperator&, const OffsetOperator&) = default;
};

/// Horizontal and vertical forward differences used by isotropic TV.
inline OffsetOperator horizontal_diff() { return {0, -1}; }
inline OffsetOperator vertical_diff() { return {-1, 0}; }

Image apply_offset_diff(const Image& img, OffsetOperator op);
Image apply_offset_diff_adjoint(const Image& img, OffsetOperator op);

/// Transfer function of the periodic difference on a rows x cols grid, laid
/// out in unshifted FFT order: fft(apply_offset_diff(g, op)) == spectrum * fft(g).
std::vector<std::complex<double>> operator_spectrum(OffsetOperator op,
                                                    std::size_t rows,
                                                    std::size_t cols);

enum class Interpolation { nearest, bilinear };

/// Rotates image content counter-clockwise (as displayed) by angle_deg about
/// its center and crops to the largest centered axis-aligned rectangle whose
/// every pixel samples inside the source. Throws InvalidInput if that
/// rectangle is smaller than 16x16.
Image rotate(const Image& img, double angle_deg,
             Interpolation method = Interpolation::bilinear);

/// Output dimensions rotate() produces for a rows x cols input.
struct RotatedExtent {
  std::size_t rows;
  std::size_t cols;
};
RotatedExtent rotated_extent(std::size_t rows, std::size_t cols, double angle_deg);

/// Center crop to rows x cols; throws InvalidInput if larger than img.
Image center_crop(const Image& img, std::size_t rows, std::size_t cols);

}  // namespace obds
