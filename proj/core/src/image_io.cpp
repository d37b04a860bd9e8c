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

#include "obds/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "obds/error.hpp"

namespace obds {
namespace {

static_assert(std::endian::native == std::endian::little,
              "raw float I/O assumes a little-endian host");

constexpr char kMagic[4] = {'O', 'B', 'D', 'S'};

void check_depth(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw InvalidInput("bit depth must be 8 or 16");
}

std::uint32_t quantize(double v, std::uint32_t maxval) {
  const double c = std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0);
  return static_cast<std::uint32_t>(std::lround(c * maxval));
}

std::string lower_ext(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

}  // namespace

ImageFormat format_from_path(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".pgm") return ImageFormat::pgm;
  if (ext == ".obds" || ext == ".raw") return ImageFormat::raw_float;
  throw IoError("unsupported image extension '" + ext + "' (use .png, .pgm or .obds)");
}

Image read_image(const std::filesystem::path& path) {
  switch (format_from_path(path)) {
    case ImageFormat::png: return read_png(path);
    case ImageFormat::pgm: return read_pgm(path);
    case ImageFormat::raw_float: return read_raw_float(path);
  }
  throw IoError("unreachable");
}

void write_image(const std::filesystem::path& path, const Image& img, int bit_depth) {
  switch (format_from_path(path)) {
    case ImageFormat::png: write_png(path, img, bit_depth); return;
    case ImageFormat::pgm: write_pgm(path, img, bit_depth); return;
    case ImageFormat::raw_float: write_raw_float(path, img); return;
  }
}

Image read_raw_float(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char header[16];
  if (!in.read(header, sizeof header)) throw IoError(path.string() + ": truncated header");
  if (std::memcmp(header, kMagic, 4) != 0) throw IoError(path.string() + ": bad magic");
  std::uint32_t rows = 0, cols = 0;
  std::memcpy(&rows, header + 4, 4);
  std::memcpy(&cols, header + 8, 4);
  if (rows == 0 || cols == 0) throw IoError(path.string() + ": empty image");
  const std::size_t n = std::size_t{rows} * cols;
  std::vector<float> data(n);
  if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n * 4)))
    throw IoError(path.string() + ": truncated pixel data");
  std::vector<double> px(data.begin(), data.end());
  Image img(rows, cols, std::move(px));
  if (!all_finite(img)) throw IoError(path.string() + ": non-finite pixel values");
  return img;
}

void write_raw_float(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  char header[16] = {};
  std::memcpy(header, kMagic, 4);
  const auto rows = static_cast<std::uint32_t>(img.rows());
  const auto cols = static_cast<std::uint32_t>(img.cols());
  std::memcpy(header + 4, &rows, 4);
  std::memcpy(header + 8, &cols, 4);
  out.write(header, sizeof header);
  std::vector<float> data(img.pixels().begin(), img.pixels().end());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * 4));
  if (!out) throw IoError("write failed: " + path.string());
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto next_token = [&]() {
    std::string tok;
    char c;
    while (in.get(c)) {
      if (c == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(c);
    }
    return tok;
  };
  if (next_token() != "P5") throw IoError(path.string() + ": not a binary PGM (P5)");
  long cols = 0, rows = 0, maxval = 0;
  try {
    cols = std::stol(next_token());
    rows = std::stol(next_token());
    maxval = std::stol(next_token());
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed PGM header");
  }
  if (rows <= 0 || cols <= 0 || maxval <= 0 || maxval > 65535)
    throw IoError(path.string() + ": malformed PGM header");
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  const std::size_t bpp = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bpp);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
    throw IoError(path.string() + ": truncated PGM data");
  std::vector<double> px(n);
  for (std::size_t k = 0; k < n; ++k) {
    const unsigned v = bpp == 2 ? (unsigned{raw[2 * k]} << 8) | raw[2 * k + 1] : raw[k];
    px[k] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return Image(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(px));
}

void write_pgm(const std::filesystem::path& path, const Image& img, int bit_depth) {
  check_depth(bit_depth);
  const std::uint32_t maxval = bit_depth == 16 ? 65535 : 255;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out << "P5\n" << img.cols() << ' ' << img.rows() << '\n' << maxval << '\n';
  std::vector<unsigned char> raw;
  raw.reserve(img.size() * (bit_depth / 8));
  for (double v : img.pixels()) {
    const std::uint32_t q = quantize(v, maxval);
    if (bit_depth == 16) raw.push_back(static_cast<unsigned char>(q >> 8));
    raw.push_back(static_cast<unsigned char>(q & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Image read_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError(path.string() + ": not a PNG file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<double> px;
  png_uint_32 width = 0, height = 0;
  // libpng reports errors via longjmp; keep only trivially destructible
  // locals live across the jump.
  std::vector<png_bytep> row_ptrs;
  std::vector<unsigned char> buffer;
  int depth = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": corrupt PNG data");
  }
  png_init_io(png, f.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  if (depth < 8) depth = 8;
  png_read_update_info(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  buffer.resize(rowbytes * height);
  row_ptrs.resize(height);
  for (png_uint_32 i = 0; i < height; ++i) row_ptrs[i] = buffer.data() + i * rowbytes;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const double maxval = depth == 16 ? 65535.0 : 255.0;
  px.resize(std::size_t{width} * height);
  for (png_uint_32 i = 0; i < height; ++i)
    for (png_uint_32 j = 0; j < width; ++j) {
      const unsigned char* p = row_ptrs[i];
      const unsigned v = depth == 16 ? (unsigned{p[2 * j]} << 8) | p[2 * j + 1] : p[j];
      px[std::size_t{i} * width + j] = v / maxval;
    }
  return Image(height, width, std::move(px));
}

void write_png(const std::filesystem::path& path, const Image& img, int bit_depth) {
  check_depth(bit_depth);
  const std::uint32_t maxval = bit_depth == 16 ? 65535 : 255;
  const std::size_t bpp = static_cast<std::size_t>(bit_depth / 8);
  std::vector<unsigned char> buffer(img.size() * bpp);
  for (std::size_t k = 0; k < img.size(); ++k) {
    const std::uint32_t q = quantize(img.pixels()[k], maxval);
    if (bpp == 2) {
      buffer[2 * k] = static_cast<unsigned char>(q >> 8);
      buffer[2 * k + 1] = static_cast<unsigned char>(q & 0xff);
    } else {
      buffer[k] = static_cast<unsigned char>(q);
    }
  }
  std::vector<png_bytep> rows(img.rows());
  for (std::size_t i = 0; i < img.rows(); ++i) rows[i] = buffer.data() + i * img.cols() * bpp;

  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("write failed: " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.cols()),
               static_cast<png_uint_32>(img.rows()), bit_depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Image offset_encode(const Image& signed_field) {
  Image out = signed_field;
  for (double& v : out.pixels()) v = (v + 1.0) / 2.0;
  return out;
}

}  // namespace obds
