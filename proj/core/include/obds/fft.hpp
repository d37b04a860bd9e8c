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
#include <memory>
#include <span>
#include <vector>

namespace obds {

class Image;

/// 2-D complex DFT of fixed size, unnormalized forward transform
/// F(u,v) = sum g(i,j) exp(-2 pi i (u i / rows + v j / cols)).
/// The inverse divides by rows*cols. Instances own their buffers and plans;
/// one instance must not be used from two threads at once.
class Fft2d {
 public:
  Fft2d(std::size_t rows, std::size_t cols);
  ~Fft2d();
  Fft2d(Fft2d&&) noexcept;
  Fft2d& operator=(Fft2d&&) noexcept;
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  std::size_t rows() const noexcept;
  std::size_t cols() const noexcept;

  std::vector<std::complex<double>> forward(const Image& img);
  std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in);
  /// Inverse transform, keeping the real part.
  Image inverse_real(std::span<const std::complex<double>> spectrum);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace obds
