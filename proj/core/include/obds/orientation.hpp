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

#include <vector>

#include "obds/guided_filter.hpp"
#include "obds/image.hpp"

namespace obds {

/// One oriented difference operator of the (2r+1)x(2r+1) template.
/// theta_deg is the angle from the upward vertical to the displacement
/// (a, b), counter-clockwise, reduced to [0, 180).
struct CandidateDirection {
  int a = -1;
  int b = 0;
  double theta_deg = 0.0;

  OffsetOperator op() const { return {a, b}; }
};

/// Frequency offset from the centered DC term: du along rows, dv along cols.
struct FrequencyOffset {
  int du = 0;
  int dv = 0;

  friend bool operator==(const FrequencyOffset&, const FrequencyOffset&) = default;
};

struct OrientationResult {
  double theta_stripe_deg = 0.0;
  CandidateDirection chosen;
  FrequencyOffset dominant_freq;
};

inline constexpr int kDefaultTemplateRadius = 9;

/// Angle in [0, 180) of the displacement (a, b), measured from "up".
double offset_angle_deg(int a, int b);

/// Circular distance between two orientations, in [0, 90].
double angular_distance_deg(double x, double y);

/// {(-1,0)} plus every (a,b) with |a| <= r, -r <= b <= -1 and gcd(|a|,|b|) = 1,
/// sorted by angle. Throws InvalidInput for r < 1.
std::vector<CandidateDirection> enumerate_candidates(int r);

/// Largest-magnitude non-DC Fourier coefficient of e, reported in the
/// canonical half-plane (du < 0, or du == 0 and dv > 0). Throws
/// OrientationUndeterminable when the spectrum has no non-DC energy.
FrequencyOffset dominant_frequency(const Image& e);

/// Stripe angle perpendicular to the frequency vector, computed in physical
/// cycles-per-pixel so rectangular grids are not biased.
double frequency_to_angle(FrequencyOffset f, std::size_t rows, std::size_t cols);

/// Candidate closest to theta_stripe_deg under the mod-180 distance; ties go
/// to the smaller angle. Throws InvalidInput on an empty list.
CandidateDirection select_candidate(double theta_stripe_deg,
                                    const std::vector<CandidateDirection>& candidates);

/// background_eliminate -> dominant_frequency -> frequency_to_angle ->
/// select_candidate.
OrientationResult estimate_orientation(const Image& y, const GuidedFilterParams& gf = {},
                                       int r = kDefaultTemplateRadius);

}  // namespace obds
