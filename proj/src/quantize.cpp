#include "paletteforge/quantize.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace paletteforge {

namespace {

struct WeightedColor {
    ColorTriple color;
    std::uint64_t weight = 0;  // pixel count
};

int channel_of(const ColorTriple& c, int channel) {
    return channel == 0 ? c.r : channel == 1 ? c.g : c.b;
}

struct Box {
    std::size_t begin = 0;  // range into the shared point array
    std::size_t end = 0;

    std::size_t distinct() const { return end - begin; }
};

// Widest channel of the box and its range, over distinct colors.
std::pair<int, int> widest_channel(const std::vector<WeightedColor>& points, const Box& box) {
    int best_channel = 0;
    int best_range = -1;
    for (int ch = 0; ch < 3; ++ch) {
        int lo = 256, hi = -1;
        for (std::size_t i = box.begin; i < box.end; ++i) {
            const int v = channel_of(points[i].color, ch);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_range) {
            best_range = hi - lo;
            best_channel = ch;
        }
    }
    return {best_channel, best_range};
}

}  // namespace

IndexedImage quantize_median_cut(const RgbImage& img, std::size_t colors) {
    if (colors < 2 || colors > 256) throw BadParams("quantize: color count must be in [2, 256]");
    if (img.pixel_count() == 0 || img.pixels.size() != img.pixel_count())
        throw BadParams("quantize: empty or inconsistent image");

    // Distinct colors with pixel counts, in a fixed (packed value) order.
    std::unordered_map<std::uint32_t, std::uint64_t> histogram;
    histogram.reserve(4096);
    for (const ColorTriple c : img.pixels) ++histogram[pack_rgb(c)];

    std::vector<WeightedColor> points;
    points.reserve(histogram.size());
    for (const auto& [packed, weight] : histogram)
        points.push_back(WeightedColor{unpack_rgb(packed), weight});
    std::sort(points.begin(), points.end(), [](const WeightedColor& a, const WeightedColor& b) {
        return pack_rgb(a.color) < pack_rgb(b.color);
    });

    const std::size_t target = std::min(colors, points.size());
    std::vector<Box> boxes{Box{0, points.size()}};  // vector position = creation order
    while (boxes.size() < target) {
        // Split the box with the largest channel range; ties keep the
        // earliest-created box.
        std::size_t pick = boxes.size();
        int pick_range = 0;
        int pick_channel = 0;
        for (std::size_t b = 0; b < boxes.size(); ++b) {
            if (boxes[b].distinct() < 2) continue;
            const auto [ch, range] = widest_channel(points, boxes[b]);
            if (pick == boxes.size() || range > pick_range) {
                pick = b;
                pick_range = range;
                pick_channel = ch;
            }
        }
        if (pick == boxes.size()) break;  // nothing left to split

        Box& box = boxes[pick];
        std::sort(points.begin() + std::ptrdiff_t(box.begin),
                  points.begin() + std::ptrdiff_t(box.end),
                  [&](const WeightedColor& a, const WeightedColor& b) {
                      const int va = channel_of(a.color, pick_channel);
                      const int vb = channel_of(b.color, pick_channel);
                      if (va != vb) return va < vb;
                      return pack_rgb(a.color) < pack_rgb(b.color);
                  });

        std::uint64_t total = 0;
        for (std::size_t i = box.begin; i < box.end; ++i) total += points[i].weight;

        // Weighted median; a point landing exactly on half stays in the
        // lower box. Both halves are kept nonempty.
        std::size_t cut = box.begin;
        std::uint64_t cumulative = 0;
        while (cut < box.end - 1) {
            cumulative += points[cut].weight;
            ++cut;
            if (2 * cumulative >= total) break;
        }

        const Box upper{cut, box.end};
        box.end = cut;                // lower half keeps the creation slot
        boxes.push_back(upper);       // upper half is the newest box
    }

    // Representatives: weighted channel means rounded half up.
    std::vector<ColorTriple> representatives(boxes.size());
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        std::uint64_t sum_r = 0, sum_g = 0, sum_b = 0, weight = 0;
        for (std::size_t i = boxes[b].begin; i < boxes[b].end; ++i) {
            sum_r += points[i].weight * points[i].color.r;
            sum_g += points[i].weight * points[i].color.g;
            sum_b += points[i].weight * points[i].color.b;
            weight += points[i].weight;
        }
        const auto mean = [weight](std::uint64_t sum) {
            return std::uint8_t((2 * sum + weight) / (2 * weight));
        };
        representatives[b] = ColorTriple{mean(sum_r), mean(sum_g), mean(sum_b)};
    }

    // Distinct boxes can round to the same representative; merge them.
    IndexedImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    std::vector<std::uint8_t> box_index(boxes.size());
    std::unordered_map<std::uint32_t, std::uint8_t> palette_index;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        const std::uint32_t key = pack_rgb(representatives[b]);
        auto it = palette_index.find(key);
        if (it == palette_index.end()) {
            it = palette_index.emplace(key, std::uint8_t(out.palette.size())).first;
            out.palette.colors.push_back(representatives[b]);
        }
        box_index[b] = it->second;
    }

    std::unordered_map<std::uint32_t, std::uint8_t> color_to_index;
    color_to_index.reserve(points.size());
    for (std::size_t b = 0; b < boxes.size(); ++b)
        for (std::size_t i = boxes[b].begin; i < boxes[b].end; ++i)
            color_to_index.emplace(pack_rgb(points[i].color), box_index[b]);

    out.indices.resize(img.pixel_count());
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.indices[i] = color_to_index.at(pack_rgb(img.pixels[i]));
    return out;
}

}  // namespace paletteforge
