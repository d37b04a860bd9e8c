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

#include "obds/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "obds/error.hpp"

namespace obds {

SampleWindows parse_windows(std::istream& in) {
  SampleWindows out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    SampleWindow w;
    if (tag == "striped-homogeneous" || tag == "icv")
      w.tag = WindowTag::striped_homogeneous;
    else if (tag == "noise-free" || tag == "mrd")
      w.tag = WindowTag::noise_free;
    else
      throw InvalidInput("windows line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    long r0, c0, h, wd;
    std::string extra;
    if (!(ls >> r0 >> c0 >> h >> wd) || (ls >> extra) || r0 < 0 || c0 < 0 || h <= 0 || wd <= 0)
      throw InvalidInput("windows line " + std::to_string(lineno) +
                         ": expected `tag row0 col0 height width`");
    w.row0 = static_cast<std::size_t>(r0);
    w.col0 = static_cast<std::size_t>(c0);
    w.height = static_cast<std::size_t>(h);
    w.width = static_cast<std::size_t>(wd);
    out.push_back(w);
  }
  return out;
}

SampleWindows read_windows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_windows(in);
}

void check_windows(const SampleWindows& windows, const Image& img) {
  for (const auto& w : windows)
    if (w.row0 + w.height > img.rows() || w.col0 + w.width > img.cols())
      throw InvalidInput("sample window at (" + std::to_string(w.row0) + "," +
                         std::to_string(w.col0) + ") exceeds image bounds");
}

double mae(const Image& a, const Image& b) {
  require_same_shape(a, b, "mae");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a.pixels()[k] - b.pixels()[k]);
  return s / static_cast<double>(a.size());
}

double psnr(const Image& a, const Image& b, double peak) {
  require_same_shape(a, b, "psnr");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a.pixels()[k] - b.pixels()[k];
    s += d * d;
  }
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = s / static_cast<double>(a.size());
  return 10.0 * std::log10(peak * peak / mse);
}

namespace {

constexpr int kSsimWin = 11;
constexpr double kSsimSigma = 1.5;

std::vector<double> gaussian_kernel_1d() {
  std::vector<double> g(kSsimWin);
  const int half = kSsimWin / 2;
  double total = 0.0;
  for (int k = 0; k < kSsimWin; ++k) {
    const double x = k - half;
    g[static_cast<std::size_t>(k)] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
    total += g[static_cast<std::size_t>(k)];
  }
  for (double& v : g) v /= total;
  return g;
}

// Separable "valid" correlation with the normalized Gaussian window.
Image filter_valid(const Image& img, const std::vector<double>& g) {
  const std::size_t w = g.size();
  const std::size_t out_r = img.rows() - w + 1;
  const std::size_t out_c = img.cols() - w + 1;
  Image tmp(img.rows(), out_c);
  for (std::size_t i = 0; i < img.rows(); ++i)
    for (std::size_t j = 0; j < out_c; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < w; ++k) s += g[k] * img(i, j + k);
      tmp(i, j) = s;
    }
  Image out(out_r, out_c);
  for (std::size_t i = 0; i < out_r; ++i)
    for (std::size_t j = 0; j < out_c; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < w; ++k) s += g[k] * tmp(i + k, j);
      out(i, j) = s;
    }
  return out;
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  require_same_shape(a, b, "ssim");
  if (a.rows() < kSsimWin || a.cols() < kSsimWin)
    throw InvalidInput("ssim: images smaller than the 11x11 window");
  constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
  constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
  const auto g = gaussian_kernel_1d();

  Image aa = a, bb = b, ab = a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    aa.pixels()[k] *= a.pixels()[k];
    bb.pixels()[k] *= b.pixels()[k];
    ab.pixels()[k] *= b.pixels()[k];
  }
  const Image mu_a = filter_valid(a, g);
  const Image mu_b = filter_valid(b, g);
  const Image e_aa = filter_valid(aa, g);
  const Image e_bb = filter_valid(bb, g);
  const Image e_ab = filter_valid(ab, g);

  double total = 0.0;
  for (std::size_t k = 0; k < mu_a.size(); ++k) {
    const double ma = mu_a.pixels()[k];
    const double mb = mu_b.pixels()[k];
    const double va = e_aa.pixels()[k] - ma * ma;
    const double vb = e_bb.pixels()[k] - mb * mb;
    const double cov = e_ab.pixels()[k] - ma * mb;
    total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

std::vector<IcvValue> icv(const Image& img, const SampleWindows& windows) {
  check_windows(windows, img);
  std::vector<IcvValue> out;
  for (const auto& w : windows) {
    if (w.tag != WindowTag::striped_homogeneous) continue;
    double s = 0.0, sq = 0.0;
    for (std::size_t i = w.row0; i < w.row0 + w.height; ++i)
      for (std::size_t j = w.col0; j < w.col0 + w.width; ++j) s += img(i, j);
    const double n = static_cast<double>(w.height * w.width);
    const double m = s / n;
    for (std::size_t i = w.row0; i < w.row0 + w.height; ++i)
      for (std::size_t j = w.col0; j < w.col0 + w.width; ++j) {
        const double d = img(i, j) - m;
        sq += d * d;
      }
    const double sd = std::sqrt(sq / n);
    // Residual float noise on a constant window still counts as constant.
    if (sd <= 1e-12 * std::max(1.0, std::abs(m)))
      out.push_back({kIcvSentinel, true});
    else
      out.push_back({std::min(m / sd, kIcvSentinel), false});
  }
  if (out.empty()) throw InvalidInput("icv: no striped-homogeneous windows");
  return out;
}

MrdReport mrd(const Image& noisy, const Image& destriped, const SampleWindows& windows) {
  require_same_shape(noisy, destriped, "mrd");
  check_windows(windows, noisy);
  MrdReport rep;
  double total = 0.0;
  bool any_window = false;
  for (const auto& w : windows) {
    if (w.tag != WindowTag::noise_free) continue;
    any_window = true;
    for (std::size_t i = w.row0; i < w.row0 + w.height; ++i)
      for (std::size_t j = w.col0; j < w.col0 + w.width; ++j) {
        const double n = noisy(i, j);
        if (n == 0.0) {
          ++rep.pixels_excluded;
          continue;
        }
        total += 100.0 * std::abs(destriped(i, j) - n) / std::abs(n);
        ++rep.pixels_used;
      }
  }
  if (!any_window) throw InvalidInput("mrd: no noise-free windows");
  rep.value = rep.pixels_used ? total / static_cast<double>(rep.pixels_used) : 0.0;
  return rep;
}

}  // namespace obds
