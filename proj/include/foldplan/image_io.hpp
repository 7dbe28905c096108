// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "foldplan/raster.hpp"

namespace foldplan::io {

using Bytes = std::vector<std::uint8_t>;

// PNG decoding accepts gray, gray+alpha, RGB, RGBA and palette images of any
// bit depth; everything is expanded to 8-bit RGB. Alpha is dropped.
RgbImage decode_png(std::span<const std::uint8_t> data);
RgbImage read_png(const std::filesystem::path& path);

Bytes encode_png(const RgbImage& image);
/// Masks encode as 8-bit grayscale, 0 for background and 255 for garment.
Bytes encode_png(const BinaryMask& mask);
void write_png(const std::filesystem::path& path, const BinaryMask& mask);
void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Binary PBM (P4), rows padded to whole bytes, 1 = set.
std::string encode_pbm(const BinaryMask& mask);
BinaryMask decode_pbm(std::string_view data);

Bytes read_file(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace foldplan::io
