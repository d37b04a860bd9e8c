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

#include "obds/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>
#include <regex>

#include "obds/error.hpp"
#include "obds/fft.hpp"

namespace obds {

void StripeSpec::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw InvalidInput("stripe amplitude must be > 0");
  if (kind == StripeKind::periodic && period < 2) throw InvalidInput("stripe period must be >= 2");
  if (kind == StripeKind::random && !(coverage >= 0.0 && coverage <= 1.0))
    throw InvalidInput("stripe coverage must lie in [0, 1]");
}

StripedImage add_stripes(const Image& clean, const StripeSpec& spec) {
  spec.validate();
  const bool vertical = spec.axis == StripeAxis::vertical;
  const std::size_t lines = vertical ? clean.cols() : clean.rows();

  std::vector<double> offset(lines, 0.0);
  if (spec.kind == StripeKind::periodic) {
    for (std::size_t k = 0; k < lines; ++k) {
      const auto phase = static_cast<double>(k % static_cast<std::size_t>(spec.period));
      offset[k] = spec.amplitude * std::cos(2.0 * std::numbers::pi * phase / spec.period);
    }
  } else {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    std::uniform_real_distribution<double> level(-spec.amplitude, spec.amplitude);
    for (std::size_t k = 0; k < lines; ++k) {
      const bool striped = pick(rng) < spec.coverage;
      const double v = level(rng);
      offset[k] = striped ? v : 0.0;
    }
  }

  StripedImage out{clean, Image(clean.rows(), clean.cols(), 0.0)};
  for (std::size_t i = 0; i < clean.rows(); ++i)
    for (std::size_t j = 0; j < clean.cols(); ++j) {
      const double s = offset[vertical ? j : i];
      out.stripes(i, j) = s;
      out.degraded(i, j) += s;
    }
  return out;
}

ObliquePair make_oblique(const Image& degraded, const Image& clean, double angle_deg) {
  require_same_shape(degraded, clean, "make_oblique");
  return {rotate(degraded, angle_deg, Interpolation::bilinear),
          rotate(clean, angle_deg, Interpolation::bilinear)};
}

Image add_gaussian_noise(const Image& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidInput("noise sigma must be >= 0");
  if (sigma == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  Image out = img;
  for (double& v : out.pixels()) v += noise(rng);
  return out;
}

namespace {

Image rescale_into(const Image& img, double lo, double hi) {
  Image out = normalize(img);
  for (double& v : out.pixels()) v = lo + (hi - lo) * v;
  return out;
}

Image smooth_field(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Image out(rows, cols, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int term = 0; term < 6; ++term) {
    const double fu = 0.3 + 2.7 * unit(rng);  // cycles across the image
    const double fv = 0.3 + 2.7 * unit(rng);
    const double ang = two_pi * unit(rng);
    const double phase = two_pi * unit(rng);
    const double amp = 1.0 / (1.0 + term);
    const double ku = fu * std::cos(ang) / static_cast<double>(rows);
    const double kv = fv * std::sin(ang) / static_cast<double>(cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        out(i, j) += amp * std::sin(two_pi * (ku * static_cast<double>(i) +
                                              kv * static_cast<double>(j)) + phase);
  }
  return out;
}

Image region_field(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Seed { double i, j, level, gi, gj; };
  std::vector<Seed> seeds(9);
  for (auto& s : seeds)
    s = {unit(rng) * static_cast<double>(rows), unit(rng) * static_cast<double>(cols), unit(rng),
         (unit(rng) - 0.5) * 0.4 / static_cast<double>(rows),
         (unit(rng) - 0.5) * 0.4 / static_cast<double>(cols)};
  Image out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const Seed* best = &seeds[0];
      double best_d = 1e300;
      for (const auto& s : seeds) {
        const double di = static_cast<double>(i) - s.i;
        const double dj = static_cast<double>(j) - s.j;
        const double d = di * di + dj * dj;
        if (d < best_d) { best_d = d; best = &s; }
      }
      out(i, j) = best->level + best->gi * (static_cast<double>(i) - best->i) +
                  best->gj * (static_cast<double>(j) - best->j);
    }
  return out;
}

Image terrain_field(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::complex<double>> spec(rows * cols);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t u = 0; u < rows; ++u)
    for (std::size_t v = 0; v < cols; ++v) {
      const double fu = static_cast<double>(u <= rows / 2 ? u : rows - u) / static_cast<double>(rows);
      const double fv = static_cast<double>(v <= cols / 2 ? v : cols - v) / static_cast<double>(cols);
      const double f = std::hypot(fu, fv);
      const double phase = two_pi * unit(rng);
      spec[u * cols + v] = f > 0.0 ? std::polar(std::pow(f, -1.5), phase) : 0.0;
    }
  // Real part of a random-phase spectrum is a real field with the same
  // radial power law.
  Fft2d fft(rows, cols);
  return fft.inverse_real(spec);
}

}  // namespace

Image make_base_image(BaseKind kind, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(kind) + 1);
  switch (kind) {
    case BaseKind::smooth:
      return rescale_into(smooth_field(rows, cols, rng), 0.15, 0.85);
    case BaseKind::regions:
      return rescale_into(region_field(rows, cols, rng), 0.15, 0.85);
    case BaseKind::mixed: {
      Image s = normalize(smooth_field(rows, cols, rng));
      Image r = normalize(region_field(rows, cols, rng));
      std::normal_distribution<double> grain(0.0, 1.0);
      Image out(rows, cols);
      for (std::size_t k = 0; k < out.size(); ++k)
        out.pixels()[k] = 0.5 * s.pixels()[k] + 0.5 * r.pixels()[k];
      // Low-amplitude spatially correlated texture.
      Image tex(rows, cols);
      for (double& v : tex.pixels()) v = grain(rng);
      Image smooth_tex = tex;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          double acc = 0.0;
          int n = 0;
          for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
              const long ii = static_cast<long>(i) + di;
              const long jj = static_cast<long>(j) + dj;
              if (ii < 0 || jj < 0 || ii >= static_cast<long>(rows) || jj >= static_cast<long>(cols))
                continue;
              acc += tex(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
              ++n;
            }
          smooth_tex(i, j) = acc / n;
        }
      for (std::size_t k = 0; k < out.size(); ++k) out.pixels()[k] += 0.03 * smooth_tex.pixels()[k];
      return rescale_into(out, 0.15, 0.85);
    }
    case BaseKind::terrain:
      return rescale_into(terrain_field(rows, cols, rng), 0.15, 0.85);
  }
  throw InvalidInput("unknown base kind");
}

namespace {

const std::regex& builtin_pattern() {
  static const std::regex re("^(smooth|regions|mixed|terrain)([0-9]+)$");
  return re;
}

}  // namespace

bool is_builtin_base(const std::string& name) {
  return std::regex_match(name, builtin_pattern());
}

Image builtin_base(const std::string& name, std::uint64_t seed) {
  std::smatch m;
  if (!std::regex_match(name, m, builtin_pattern()))
    throw InvalidInput("unknown builtin base '" + name + "' (expected smoothN, regionsN, mixedN or terrainN)");
  const std::size_t n = std::stoul(m[2].str());
  if (n < 16 || n > 8192) throw InvalidInput("builtin base size must lie in [16, 8192]");
  const std::string kind = m[1].str();
  const BaseKind k = kind == "smooth"    ? BaseKind::smooth
                     : kind == "regions" ? BaseKind::regions
                     : kind == "mixed"   ? BaseKind::mixed
                                         : BaseKind::terrain;
  return make_base_image(k, n, n, seed);
}

std::vector<double> random_angles(std::size_t count, double lo, double hi, std::uint64_t seed) {
  if (!(hi > lo)) throw InvalidInput("random_angles: empty range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (double& a : out) a = dist(rng);
  return out;
}

void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create " + path.string());
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::map<std::string, std::string> read_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError(path.string() + ": malformed line '" + line + "'");
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace obds
