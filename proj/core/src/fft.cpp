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

#include "obds/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "obds/error.hpp"
#include "obds/image.hpp"

namespace obds {
namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft2d::Impl {
  std::size_t rows;
  std::size_t cols;
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  Impl(std::size_t r, std::size_t c) : rows(r), cols(c) {
    if (r == 0 || c == 0) throw InvalidInput("Fft2d: empty grid");
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(r * c);
    fwd = fftw_plan_dft_2d(static_cast<int>(r), static_cast<int>(c), buffer, buffer,
                           FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_2d(static_cast<int>(r), static_cast<int>(c), buffer, buffer,
                           FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buffer);
  }

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buffer); }
};

Fft2d::Fft2d(std::size_t rows, std::size_t cols) : impl_(std::make_unique<Impl>(rows, cols)) {}
Fft2d::~Fft2d() = default;
Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

std::size_t Fft2d::rows() const noexcept { return impl_->rows; }
std::size_t Fft2d::cols() const noexcept { return impl_->cols; }

std::vector<std::complex<double>> Fft2d::forward(const Image& img) {
  if (img.rows() != impl_->rows || img.cols() != impl_->cols)
    throw InvalidInput("Fft2d::forward: image shape does not match plan");
  auto* buf = impl_->data();
  auto px = img.pixels();
  for (std::size_t k = 0; k < px.size(); ++k) buf[k] = {px[k], 0.0};
  fftw_execute(impl_->fwd);
  return {buf, buf + px.size()};
}

std::vector<std::complex<double>> Fft2d::forward(std::span<const std::complex<double>> in) {
  if (in.size() != impl_->rows * impl_->cols)
    throw InvalidInput("Fft2d::forward: buffer size does not match plan");
  auto* buf = impl_->data();
  std::copy(in.begin(), in.end(), buf);
  fftw_execute(impl_->fwd);
  return {buf, buf + in.size()};
}

Image Fft2d::inverse_real(std::span<const std::complex<double>> spectrum) {
  const std::size_t n = impl_->rows * impl_->cols;
  if (spectrum.size() != n) throw InvalidInput("Fft2d::inverse_real: size mismatch");
  auto* buf = impl_->data();
  std::copy(spectrum.begin(), spectrum.end(), buf);
  fftw_execute(impl_->inv);
  Image out(impl_->rows, impl_->cols);
  auto px = out.pixels();
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) px[k] = buf[k].real() * scale;
  return out;
}

}  // namespace obds
