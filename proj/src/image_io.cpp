// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "foldplan/error.hpp"

namespace foldplan::io {

RgbImage decode_png(std::span<const std::uint8_t> data) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0)
    throw Error(ErrorCode::MalformedImage, "payload is not a PNG image");

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size()))
    throw Error(ErrorCode::MalformedImage, std::string("cannot read PNG: ") + image.message);
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0 || image.width > 1u << 15 || image.height > 1u << 15) {
    png_image_free(&image);
    throw Error(ErrorCode::MalformedImage, "PNG dimensions out of range");
  }
  RgbImage out(int(image.width), int(image.height));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::MalformedImage, "cannot decode PNG: " + msg);
  }
  return out;
}

RgbImage read_png(const std::filesystem::path& path) {
  Bytes bytes = read_file(path);
  return decode_png(bytes);
}

namespace {

Bytes encode_raw(const std::uint8_t* buffer, int width, int height, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(width);
  image.height = png_uint_32(height);
  image.format = format;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, buffer, 0, nullptr))
    throw Error(ErrorCode::Io, std::string("PNG encode failed: ") + image.message);
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, buffer, 0, nullptr))
    throw Error(ErrorCode::Io, std::string("PNG encode failed: ") + image.message);
  out.resize(size);
  return out;
}

}  // namespace

Bytes encode_png(const RgbImage& image) {
  if (!image.valid()) throw Error(ErrorCode::InvalidArgument, "invalid RGB image");
  return encode_raw(image.pixels.data(), image.width, image.height, PNG_FORMAT_RGB);
}

Bytes encode_png(const BinaryMask& mask) {
  if (mask.empty_canvas()) throw Error(ErrorCode::InvalidArgument, "empty mask canvas");
  std::vector<std::uint8_t> gray(mask.bits().begin(), mask.bits().end());
  for (auto& g : gray) g = g ? 255 : 0;
  return encode_raw(gray.data(), mask.width(), mask.height(), PNG_FORMAT_GRAY);
}

void write_png(const std::filesystem::path& path, const BinaryMask& mask) {
  write_file(path, encode_png(mask));
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  write_file(path, encode_png(image));
}

std::string encode_pbm(const BinaryMask& mask) {
  std::ostringstream os;
  os << "P4\n" << mask.width() << ' ' << mask.height() << '\n';
  const int row_bytes = (mask.width() + 7) / 8;
  std::string row(std::size_t(row_bytes), '\0');
  for (int y = 0; y < mask.height(); ++y) {
    std::fill(row.begin(), row.end(), '\0');
    for (int x = 0; x < mask.width(); ++x)
      if (mask.get(x, y)) row[std::size_t(x / 8)] |= char(0x80 >> (x % 8));
    os << row;
  }
  return os.str();
}

BinaryMask decode_pbm(std::string_view data) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&] {
    skip_space();
    int v = 0;
    bool any = false;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      v = v * 10 + (data[pos++] - '0');
      any = true;
      if (v > (1 << 15)) throw Error(ErrorCode::MalformedImage, "PBM dimension too large");
    }
    if (!any) throw Error(ErrorCode::MalformedImage, "PBM header truncated");
    return v;
  };
  if (data.substr(0, 2) != "P4") throw Error(ErrorCode::MalformedImage, "not a binary PBM");
  pos = 2;
  int w = read_int();
  int h = read_int();
  if (pos >= data.size()) throw Error(ErrorCode::MalformedImage, "PBM header truncated");
  ++pos;  // single whitespace before the raster
  const std::size_t row_bytes = std::size_t(w + 7) / 8;
  if (data.size() - pos < row_bytes * std::size_t(h))
    throw Error(ErrorCode::MalformedImage, "PBM raster truncated");
  BinaryMask mask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      auto byte = static_cast<unsigned char>(data[pos + std::size_t(y) * row_bytes + std::size_t(x / 8)]);
      if (byte & (0x80 >> (x % 8))) mask.set(x, y);
    }
  return mask;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_text(const std::filesystem::path& path) {
  Bytes bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace foldplan::io
