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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "obds/image.hpp"

namespace obds {

enum class StripeKind { periodic, random };
enum class StripeAxis { vertical, horizontal };

struct StripeSpec {
  StripeKind kind = StripeKind::random;
  StripeAxis axis = StripeAxis::vertical;  ///< direction of the lines before rotation
  double amplitude = 0.1;
  int period = 6;         ///< periodic only
  double coverage = 0.8;  ///< random only: probability a line is striped
  std::uint64_t seed = 0;

  void validate() const;
};

struct StripedImage {
  Image degraded;
  Image stripes;
};

/// degraded = clean + stripes, where stripes is constant along every line
/// (column for vertical, row for horizontal). Periodic lines carry
/// amplitude * cos(2 pi k / period); random lines are chosen with
/// probability `coverage` and get an offset uniform in [-amplitude, amplitude].
StripedImage add_stripes(const Image& clean, const StripeSpec& spec);

struct ObliquePair {
  Image y;        ///< rotated observation
  Image x_truth;  ///< identically rotated clean image
};

/// Rotates both images by the same angle with bilinear resampling and the
/// same interior crop, so the pair stays pixel aligned.
ObliquePair make_oblique(const Image& degraded, const Image& clean, double angle_deg);

/// Adds zero-mean Gaussian noise of standard deviation sigma. No clipping.
Image add_gaussian_noise(const Image& img, double sigma, std::uint64_t seed);

enum class BaseKind { smooth, regions, mixed, terrain };

/// Procedural clean base in [0.15, 0.85]: `smooth` is a sum of low-frequency
/// sinusoids, `regions` is piecewise constant cells with gentle shading,
/// `mixed` blends both with fine low-amplitude texture, `terrain` is a
/// random-phase field with a 1/f^1.5 amplitude spectrum, the power-law
/// statistics typical of natural scenes.
Image make_base_image(BaseKind kind, std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Resolves builtin names of the form `<kind><size>`, e.g. "smooth200",
/// "regions256", "mixed300", "terrain400". Throws InvalidInput on unknown names.
Image builtin_base(const std::string& name, std::uint64_t seed = 0);
bool is_builtin_base(const std::string& name);

/// Deterministic angles in [lo, hi) drawn from seed.
std::vector<double> random_angles(std::size_t count, double lo, double hi, std::uint64_t seed);

/// Plain-text `key=value` sidecar, keys sorted.
void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries);
std::map<std::string, std::string> read_metadata(const std::filesystem::path& path);

}  // namespace obds
