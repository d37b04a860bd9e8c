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

#include <stdexcept>
#include <string>

namespace obds {

/// Malformed arguments or data (shape mismatch, NaN input, bad parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when no dominant non-DC frequency exists (e.g. an all-zero image).
class OrientationUndeterminable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared inside an ADMM sub-step.
class SolverDiverged : public std::runtime_error {
 public:
  SolverDiverged(const std::string& step, int iteration)
      : std::runtime_error("non-finite values in " + step + " at iteration " +
                           std::to_string(iteration)),
        step_(step),
        iteration_(iteration) {}

  const std::string& step() const noexcept { return step_; }
  int iteration() const noexcept { return iteration_; }

 private:
  std::string step_;
  int iteration_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace obds
