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

#include "obds/image.hpp"

namespace obds {

struct GuidedFilterParams {
  int radius = 1;      ///< window half-width in pixels
  double eps = 0.01;   ///< regularization, intensity^2 units
  double t = 5.0;      ///< enhancement factor applied to the detail layer

  /// Throws InvalidInput on radius < 1, eps <= 0 or t <= 0.
  void validate() const;
};

/// Mean over the (2r+1)^2 window centered on each pixel, truncated to the
/// image domain (windows are never padded).
Image box_mean(const Image& img, int radius);

/// Self-guided filter G(Y, Y): per-window coefficients a = var/(var + eps),
/// b = mean (1 - a), averaged over all windows covering a pixel.
Image guided_self_filter(const Image& y, const GuidedFilterParams& p = {});

/// Detail layer E = t (Y - G(Y, Y)). Not clipped.
Image background_eliminate(const Image& y, const GuidedFilterParams& p = {});

}  // namespace obds
