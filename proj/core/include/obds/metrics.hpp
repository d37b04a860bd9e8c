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

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "obds/image.hpp"

namespace obds {

enum class WindowTag { striped_homogeneous, noise_free };

struct SampleWindow {
  WindowTag tag = WindowTag::striped_homogeneous;
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t height = 10;
  std::size_t width = 10;
};

using SampleWindows = std::vector<SampleWindow>;

inline constexpr std::size_t kDefaultWindowSize = 10;
inline constexpr double kIcvSentinel = 1e6;

/// Parses `tag row0 col0 height width` lines; `#` starts a comment. Tags are
/// `striped-homogeneous` (alias `icv`) and `noise-free` (alias `mrd`).
SampleWindows parse_windows(std::istream& in);
SampleWindows read_windows(const std::filesystem::path& path);

/// Throws InvalidInput if any window leaves the image.
void check_windows(const SampleWindows& windows, const Image& img);

double mae(const Image& a, const Image& b);

/// 10 log10(peak^2 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b, double peak = 1.0);

/// Mean SSIM over all fully-contained 11x11 Gaussian windows (sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range 1).
double ssim(const Image& a, const Image& b);

struct IcvValue {
  double value = 0.0;
  bool zero_std = false;  ///< value is kIcvSentinel
};

/// mean / population std for every striped-homogeneous window.
std::vector<IcvValue> icv(const Image& img, const SampleWindows& windows);

struct MrdReport {
  double value = 0.0;           ///< percent
  std::size_t pixels_used = 0;
  std::size_t pixels_excluded = 0;  ///< zero-valued noisy pixels
};

/// Mean of 100 |destriped - noisy| / |noisy| over the noise-free windows.
MrdReport mrd(const Image& noisy, const Image& destriped, const SampleWindows& windows);

}  // namespace obds
