#include "paletteforge/huffman.hpp"

#include <algorithm>
#include <queue>

namespace paletteforge {

std::vector<std::uint8_t> huffman_code_lengths(std::span<const std::uint64_t> freq) {
    const std::size_t n = freq.size();
    std::vector<std::uint8_t> lengths(n, 0);

    std::vector<std::size_t> active;
    for (std::size_t s = 0; s < n; ++s)
        if (freq[s] > 0) active.push_back(s);
    if (active.empty()) return lengths;
    if (active.size() == 1) {
        lengths[active[0]] = 1;
        return lengths;
    }

    struct Node {
        std::uint64_t weight;
        std::size_t id;  // creation order; breaks weight ties deterministically
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * active.size());
    for (const std::size_t s : active) nodes.push_back(Node{freq[s], nodes.size()});

    const auto heavier = [&](std::size_t a, std::size_t b) {
        if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
        return nodes[a].id > nodes[b].id;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(heavier)> heap(heavier);
    for (std::size_t i = 0; i < nodes.size(); ++i) heap.push(i);

    while (heap.size() > 1) {
        const std::size_t a = heap.top();
        heap.pop();
        const std::size_t b = heap.top();
        heap.pop();
        nodes.push_back(Node{nodes[a].weight + nodes[b].weight, nodes.size(), int(a), int(b)});
        heap.push(nodes.size() - 1);
    }

    // Depths by walking down from the root.
    std::vector<std::pair<std::size_t, std::uint8_t>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
        const auto [idx, depth] = stack.back();
        stack.pop_back();
        if (nodes[idx].left < 0) {
            lengths[active[idx]] = depth;
        } else {
            stack.emplace_back(std::size_t(nodes[idx].left), std::uint8_t(depth + 1));
            stack.emplace_back(std::size_t(nodes[idx].right), std::uint8_t(depth + 1));
        }
    }
    return lengths;
}

CanonicalCode canonical_code(std::vector<std::uint8_t> lengths) {
    CanonicalCode cc;
    cc.codes.assign(lengths.size(), 0);

    std::vector<std::size_t> symbols;
    for (std::size_t s = 0; s < lengths.size(); ++s)
        if (lengths[s] > 0) symbols.push_back(s);
    std::stable_sort(symbols.begin(), symbols.end(), [&](std::size_t a, std::size_t b) {
        return lengths[a] < lengths[b];  // stable keeps symbol order within a length
    });

    std::uint64_t code = 0;
    std::uint8_t prev_len = 0;
    for (const std::size_t s : symbols) {
        code <<= (lengths[s] - prev_len);
        cc.codes[s] = code;
        ++code;
        prev_len = lengths[s];
    }
    cc.lengths = std::move(lengths);
    return cc;
}

CanonicalDecoder::CanonicalDecoder(std::span<const std::uint8_t> lengths) {
    for (const std::uint8_t len : lengths) max_length_ = std::max<unsigned>(max_length_, len);
    count_.assign(max_length_ + 1, 0);
    for (const std::uint8_t len : lengths)
        if (len > 0) ++count_[len];

    first_code_.assign(max_length_ + 1, 0);
    first_symbol_index_.assign(max_length_ + 1, 0);
    std::uint64_t code = 0;
    std::uint32_t index = 0;
    for (unsigned len = 1; len <= max_length_; ++len) {
        code <<= 1;
        first_code_[len] = code;
        first_symbol_index_[len] = index;
        code += count_[len];
        index += count_[len];
    }

    sorted_symbols_.reserve(index);
    for (unsigned len = 1; len <= max_length_; ++len)
        for (std::size_t s = 0; s < lengths.size(); ++s)
            if (lengths[s] == len) sorted_symbols_.push_back(std::uint32_t(s));
}

std::uint32_t CanonicalDecoder::decode(BitReader& reader) const {
    if (empty()) throw CorruptPayload("payload: empty code table");
    std::uint64_t code = 0;
    for (unsigned len = 1; len <= max_length_; ++len) {
        code = (code << 1) | reader.read_bit();
        if (code >= first_code_[len] && code - first_code_[len] < count_[len])
            return sorted_symbols_[first_symbol_index_[len] + std::uint32_t(code - first_code_[len])];
    }
    throw CorruptPayload("payload: bit pattern matches no code");
}

}  // namespace paletteforge
