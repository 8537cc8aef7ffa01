#pragma once

#include "paletteforge/image.hpp"

namespace paletteforge {

/// Median-cut quantization to at most `colors` palette entries (exact when
/// the image already has that few distinct colors). Deterministic: the box
/// with the largest channel range splits first (ties by box creation
/// order), at the weighted median (ties to the lower half); box
/// representatives are channel-wise means rounded half up.
IndexedImage quantize_median_cut(const RgbImage& img, std::size_t colors);

}  // namespace paletteforge
