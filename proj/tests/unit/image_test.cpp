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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "obds/error.hpp"
#include "obds/fft.hpp"
#include "oracles.hpp"

namespace obds {
namespace {

using testing::random_image;

TEST(Normalize, AffineRescale) {
  Image img(1, 3, {0.0, 50.0, 100.0});
  Image n = normalize(img);
  EXPECT_DOUBLE_EQ(n(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(n(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(n(0, 2), 1.0);

  Image neg(1, 3, {-1.0, 0.0, 3.0});
  Image m = normalize(neg);
  EXPECT_DOUBLE_EQ(m(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(m(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(m(0, 2), 1.0);
}

TEST(Normalize, ConstantMapsToZero) {
  Image n = normalize(Image(1, 3, {7.0, 7.0, 7.0}));
  for (double v : n.pixels()) EXPECT_EQ(v, 0.0);
}

TEST(Normalize, RejectsNonFinite) {
  Image img(1, 2, {0.0, std::nan("")});
  EXPECT_THROW(normalize(img), InvalidInput);
  img(0, 1) = INFINITY;
  EXPECT_THROW(normalize(img), InvalidInput);
}

TEST(ImageType, RejectsBadShapes) {
  EXPECT_THROW(Image(0, 3), InvalidInput);
  EXPECT_THROW(Image(2, 2, std::vector<double>(3)), InvalidInput);
  EXPECT_THROW(OffsetOperator(0, 0), InvalidInput);
}

TEST(OffsetDiff, HandEvaluatedWrap) {
  Image row(1, 3, {1.0, 2.0, 3.0});
  Image d = apply_offset_diff(row, {0, -1});
  EXPECT_DOUBLE_EQ(d(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(d(0, 2), 1.0);
}

TEST(OffsetDiff, CheckerboardDiagonalVanishes) {
  Image cb(2, 2, {0.0, 1.0, 1.0, 0.0});
  for (double v : testing::values(apply_offset_diff(cb, {-1, -1}))) EXPECT_EQ(v, 0.0);
}

TEST(OffsetDiff, KernelContainsConstants) {
  const Image c(7, 5, 0.37);
  for (OffsetOperator op : {OffsetOperator{-1, 0}, OffsetOperator{0, -1}, OffsetOperator{3, -7},
                            OffsetOperator{-9, -2}}) {
    for (double v : testing::values(apply_offset_diff(c, op))) EXPECT_EQ(v, 0.0);
    for (double v : testing::values(apply_offset_diff_adjoint(c, op))) EXPECT_EQ(v, 0.0);
  }
}

TEST(OffsetDiff, AdjointMatchesDenseTranspose) {
  Image v(1, 3, {-2.0, 1.0, 1.0});
  const auto m = testing::dense_difference(0, -1, 1, 3);
  const auto expect = testing::matvec(m, v.pixels(), /*transpose=*/true);
  Image got = apply_offset_diff_adjoint(v, {0, -1});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got.pixels()[k], expect[k], 1e-15);
}

TEST(OffsetDiff, ForwardMatchesDenseMatrix) {
  const Image u = random_image(5, 6, 3);
  for (OffsetOperator op : {OffsetOperator{-2, -1}, OffsetOperator{1, -4}, OffsetOperator{0, -1}}) {
    const auto m = testing::dense_difference(op.a, op.b, 5, 6);
    const auto expect = testing::matvec(m, u.pixels());
    const Image got = apply_offset_diff(u, op);
    for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(got.pixels()[k], expect[k], 1e-14);
  }
}

// Inner-product identity <D u, v> = <u, D^T v> on random grids and offsets.
TEST(OffsetDiff, AdjointIdentityProperty) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 16), off(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(dim(rng));
    const auto cols = static_cast<std::size_t>(dim(rng));
    int a = off(rng), b = off(rng);
    if (a == 0 && b == 0) b = -1;
    const Image u = random_image(rows, cols, rng(), -1.0, 1.0);
    const Image v = random_image(rows, cols, rng(), -1.0, 1.0);
    const double lhs = dot(apply_offset_diff(u, {a, b}), v);
    const double rhs = dot(u, apply_offset_diff_adjoint(v, {a, b}));
    EXPECT_NEAR(lhs, rhs, 1e-10) << rows << "x" << cols << " op (" << a << "," << b << ")";
  }
}

TEST(OperatorSpectrum, DcIsZero) {
  for (OffsetOperator op : {OffsetOperator{-1, 0}, OffsetOperator{2, -9}})
    EXPECT_EQ(std::abs(operator_spectrum(op, 9, 4)[0]), 0.0);
}

TEST(OperatorSpectrum, MatchesNaiveDft) {
  const Image g = random_image(8, 8, 99);
  for (OffsetOperator op : {OffsetOperator{-1, 0}, OffsetOperator{0, -1}, OffsetOperator{-2, -1},
                            OffsetOperator{3, -5}}) {
    const auto lhs = testing::naive_dft(apply_offset_diff(g, op));
    const auto g_hat = testing::naive_dft(g);
    const auto lambda = operator_spectrum(op, 8, 8);
    for (std::size_t k = 0; k < lhs.size(); ++k)
      EXPECT_LT(std::abs(lhs[k] - lambda[k] * g_hat[k]), 1e-10);
  }
}

TEST(OperatorSpectrum, RowOperatorModulus) {
  const std::size_t n = 12;
  const auto lambda = operator_spectrum({0, -1}, 1, n);
  for (std::size_t v = 0; v < n; ++v) {
    const double expect = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(v) / n);
    EXPECT_NEAR(std::norm(lambda[v]), expect, 1e-12);
  }
}

// Spatial difference == inverse FFT of spectrum * FFT(g), across shapes.
TEST(OperatorSpectrum, SpectralEquivalenceProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 20), off(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rows = static_cast<std::size_t>(dim(rng));
    const auto cols = static_cast<std::size_t>(dim(rng));
    int a = off(rng), b = off(rng);
    if (a == 0 && b == 0) a = 1;
    const Image g = random_image(rows, cols, rng());
    Fft2d fft(rows, cols);
    auto spec = fft.forward(g);
    const auto lambda = operator_spectrum({a, b}, rows, cols);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= lambda[k];
    const Image via_fft = fft.inverse_real(spec);
    const Image direct = apply_offset_diff(g, {a, b});
    for (std::size_t k = 0; k < g.size(); ++k)
      EXPECT_NEAR(via_fft.pixels()[k], direct.pixels()[k], 1e-9);
  }
}

TEST(Rotate, ZeroAngleIsIdentity) {
  const Image img = random_image(20, 24, 5);
  const Image r = rotate(img, 0.0);
  ASSERT_TRUE(r.same_shape(img));
  for (std::size_t k = 0; k < img.size(); ++k) EXPECT_EQ(r.pixels()[k], img.pixels()[k]);
}

TEST(Rotate, QuarterTurnNearestIsTransposeFlip) {
  const std::size_t n = 17;
  const Image img = random_image(n, n, 11);
  const Image r = rotate(img, 90.0, Interpolation::nearest);
  ASSERT_EQ(r.rows(), n);
  ASSERT_EQ(r.cols(), n);
  // Counter-clockwise: out(i, j) = in(j, n - 1 - i).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(r(i, j), img(j, n - 1 - i));
}

TEST(Rotate, CropIsInteriorAndShrinksWithAngle) {
  const Image img(100, 100, 0.5);
  const Image r = rotate(img, 30.0);
  EXPECT_LT(r.rows(), 100u);
  // Constant input: no padding value can leak in.
  for (double v : r.pixels()) EXPECT_NEAR(v, 0.5, 1e-12);
  const auto ext = rotated_extent(100, 100, 45.0);
  // Largest square inside a square rotated by 45 degrees has side 99/sqrt(2).
  EXPECT_EQ(ext.rows, static_cast<std::size_t>(std::floor(99.0 / std::sqrt(2.0))) + 1);
}

TEST(Rotate, DegenerateCropThrows) {
  EXPECT_THROW(rotate(Image(20, 20, 0.0), 40.0), InvalidInput);
  EXPECT_THROW(rotate(Image(10, 10, 0.0), 0.0), InvalidInput);
}

TEST(Rotate, ForwardBackwardRoundTripOnSmoothImage) {
  const std::size_t n = 128;
  Image img(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      img(i, j) = 0.5 + 0.3 * std::sin(0.05 * static_cast<double>(i)) *
                            std::cos(0.04 * static_cast<double>(j));
  for (double angle : {7.0, 23.5, 41.0}) {
    const Image back = rotate(rotate(img, angle), -angle);
    // Both outputs are centered crops, so compare on the common center.
    const Image ref = center_crop(img, back.rows(), back.cols());
    double err = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) err += std::abs(ref.pixels()[k] - back.pixels()[k]);
    EXPECT_LT(err / static_cast<double>(ref.size()), 0.02) << angle;
  }
}

}  // namespace
}  // namespace obds
