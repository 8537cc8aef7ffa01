#include "paletteforge/baselines.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "paletteforge/kernels.hpp"

namespace paletteforge::baselines {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::identity: return "identity";
        case Strategy::random: return "random";
        case Strategy::luminance: return "luminance";
        case Strategy::greedy_chain: return "greedy_chain";
        case Strategy::brute_force: return "brute_force";
        case Strategy::ica: return "ica";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "identity") return Strategy::identity;
    if (name == "random") return Strategy::random;
    if (name == "luminance") return Strategy::luminance;
    if (name == "greedy_chain") return Strategy::greedy_chain;
    if (name == "brute_force") return Strategy::brute_force;
    if (name == "ica") return Strategy::ica;
    throw BadParams("unknown strategy: " + name);
}

Permutation identity_order(const IndexedImage& img) {
    return Permutation::identity(img.palette_size());
}

Permutation random_order(const IndexedImage& img, Rng& rng) {
    return random_permutation(img.palette_size(), rng);
}

Permutation luminance_order(const IndexedImage& img) {
    const std::size_t m = img.palette_size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto luma = [&](std::size_t k) {
            const ColorTriple c = img.palette.colors[k];
            return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
        };
        return luma(a) < luma(b);
    });

    Permutation perm;
    perm.map.resize(m);
    for (std::size_t rank = 0; rank < m; ++rank) perm.map[order[rank]] = std::uint8_t(rank);
    return perm;
}

Permutation greedy_chain_order(const IndexedImage& img) {
    const std::size_t m = img.palette_size();

    std::vector<std::uint64_t> frequency(m, 0);
    for (const std::uint8_t v : img.indices) ++frequency[v];
    std::size_t current = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (frequency[k] > frequency[current]) current = k;

    const auto distance2 = [&](std::size_t a, std::size_t b) {
        const ColorTriple x = img.palette.colors[a];
        const ColorTriple y = img.palette.colors[b];
        const long dr = long(x.r) - long(y.r);
        const long dg = long(x.g) - long(y.g);
        const long db = long(x.b) - long(y.b);
        return dr * dr + dg * dg + db * db;
    };

    Permutation perm;
    perm.map.resize(m);
    std::vector<bool> visited(m, false);
    visited[current] = true;
    perm.map[current] = 0;
    for (std::size_t rank = 1; rank < m; ++rank) {
        std::size_t nearest = m;
        long best = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (visited[k]) continue;
            const long d = distance2(current, k);
            if (nearest == m || d < best) {
                nearest = k;
                best = d;
            }
        }
        visited[nearest] = true;
        perm.map[nearest] = std::uint8_t(rank);
        current = nearest;
    }
    return perm;
}

std::pair<Permutation, std::int64_t> brute_force_optimal(const IndexedImage& img, ScanMode mode) {
    if (img.palette_size() > kBruteForceMaxColors)
        throw PaletteTooLarge("brute_force_optimal: palette larger than " +
                              std::to_string(kBruteForceMaxColors) + " colors");
    const CooccurrenceMatrix matrix = CooccurrenceMatrix::from_image(img, mode);
    kernels::SearchResult result = kernels::exhaustive_best(matrix);
    return {std::move(result.best), result.cost};
}

}  // namespace paletteforge::baselines
