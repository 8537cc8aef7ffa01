#pragma once

#include <filesystem>

#include "paletteforge/image.hpp"

namespace paletteforge {

/// Reads a binary P6 portable pixmap with 8-bit channels (maxval 255).
/// Header comments are honored. Throws IoError, UnsupportedFormat or
/// MalformedHeader.
RgbImage load_ppm(const std::filesystem::path& path);

/// Writes the canonical form: "P6\n<w> <h>\n255\n" followed by raw RGB.
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

}  // namespace paletteforge
