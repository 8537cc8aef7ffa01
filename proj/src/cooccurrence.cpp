#include "paletteforge/cooccurrence.hpp"

#include <cstdlib>

namespace paletteforge {

CooccurrenceMatrix CooccurrenceMatrix::from_image(const IndexedImage& img, ScanMode mode) {
    return from_sequence(scan(img, mode), img.palette_size());
}

CooccurrenceMatrix CooccurrenceMatrix::from_sequence(const ScanSequence& seq,
                                                     std::size_t palette_size) {
    CooccurrenceMatrix m;
    m.palette_size_ = palette_size;
    m.counts_.assign(palette_size * palette_size, 0);

    for (std::size_t i = 1; i < seq.values.size(); ++i) {
        const std::size_t a = seq.values[i - 1];
        const std::size_t b = seq.values[i];
        ++m.counts_[a * palette_size + b];
        if (a != b) ++m.counts_[b * palette_size + a];
        ++m.adjacency_total_;
    }

    for (std::size_t a = 0; a < palette_size; ++a)
        for (std::size_t b = a + 1; b < palette_size; ++b)
            if (const std::uint64_t count = m.counts_[a * palette_size + b]; count > 0)
                m.pairs_.push_back(Pair{std::uint8_t(a), std::uint8_t(b), count});
    return m;
}

std::int64_t CooccurrenceMatrix::evaluate(const Permutation& perm) const {
    std::int64_t total = 0;
    for (const Pair& p : pairs_)
        total += std::int64_t(p.count) * std::abs(int(perm.map[p.a]) - int(perm.map[p.b]));
    return total;
}

}  // namespace paletteforge
