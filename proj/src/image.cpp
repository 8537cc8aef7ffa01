#include "paletteforge/image.hpp"

#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace paletteforge {

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), std::uint8_t(0));
    return p;
}

bool Permutation::is_valid() const {
    if (map.size() > 256) return false;
    std::vector<bool> seen(map.size(), false);
    for (const std::uint8_t v : map) {
        if (v >= map.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation inverse(const Permutation& p) {
    Permutation inv;
    inv.map.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv.map[p.map[i]] = std::uint8_t(i);
    return inv;
}

std::size_t distinct_color_count(const RgbImage& img) {
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(1024);
    for (const ColorTriple c : img.pixels) seen.insert(pack_rgb(c));
    return seen.size();
}

IndexedImage extract_indexed(const RgbImage& img) {
    if (img.pixel_count() == 0 || img.pixels.size() != img.pixel_count())
        throw BadParams("extract_indexed: empty or inconsistent image");

    IndexedImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    out.indices.resize(img.pixel_count());

    std::unordered_map<std::uint32_t, std::uint8_t> index_of;
    index_of.reserve(512);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const std::uint32_t key = pack_rgb(img.pixels[i]);
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            if (out.palette.size() == 256)
                throw TooManyColors("extract_indexed: more than 256 distinct colors");
            it = index_of.emplace(key, std::uint8_t(out.palette.size())).first;
            out.palette.colors.push_back(img.pixels[i]);
        }
        out.indices[i] = it->second;
    }
    return out;
}

RgbImage render(const IndexedImage& img) {
    RgbImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    out.pixels.resize(img.pixel_count());
    for (std::size_t i = 0; i < img.indices.size(); ++i)
        out.pixels[i] = img.palette.colors[img.indices[i]];
    return out;
}

IndexedImage apply_permutation(const IndexedImage& img, const Permutation& perm) {
    if (perm.size() != img.palette_size())
        throw LengthMismatch("apply_permutation: permutation length != palette size");

    IndexedImage out;
    out.rows = img.rows;
    out.cols = img.cols;
    out.indices.resize(img.indices.size());
    for (std::size_t i = 0; i < img.indices.size(); ++i)
        out.indices[i] = perm.map[img.indices[i]];

    out.palette.colors.resize(img.palette_size());
    for (std::size_t k = 0; k < img.palette_size(); ++k)
        out.palette.colors[perm.map[k]] = img.palette.colors[k];
    return out;
}

void validate(const IndexedImage& img) {
    const std::size_t m = img.palette_size();
    if (m == 0 || m > 256) throw Error("validate: palette size out of range");
    if (img.pixel_count() == 0 || img.indices.size() != img.pixel_count())
        throw Error("validate: empty or inconsistent index plane");

    std::vector<bool> referenced(m, false);
    for (const std::uint8_t v : img.indices) {
        if (v >= m) throw Error("validate: index out of palette range");
        referenced[v] = true;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (!referenced[k]) throw Error("validate: unreferenced palette entry");

    std::unordered_set<std::uint32_t> seen;
    for (const ColorTriple c : img.palette.colors)
        if (!seen.insert(pack_rgb(c)).second) throw Error("validate: duplicate palette entry");
}

}  // namespace paletteforge
