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

#include "obds/image.hpp"

namespace obds {

enum class ImageFormat { png, pgm, raw_float };

/// Picks the format from the extension: .png, .pgm, .obds (raw float32).
ImageFormat format_from_path(const std::filesystem::path& path);

/// Integer formats are returned scaled by 1/maxval, so values lie in [0, 1].
/// The raw float format round-trips float32 values exactly.
Image read_image(const std::filesystem::path& path);

/// Integer formats clip to [0, 1] before quantizing to `bit_depth` (8 or 16).
void write_image(const std::filesystem::path& path, const Image& img, int bit_depth = 16);

/// Raw float32 container: 16-byte header (magic "OBDS", u32 rows, u32 cols,
/// u32 reserved = 0) then rows*cols little-endian float32 values, row-major.
Image read_raw_float(const std::filesystem::path& path);
void write_raw_float(const std::filesystem::path& path, const Image& img);

Image read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image& img, int bit_depth = 16);

Image read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& img, int bit_depth = 16);

/// Maps a signed field in [-1, 1] into [0, 1] as (s + 1) / 2 for integer formats.
Image offset_encode(const Image& signed_field);

}  // namespace obds
