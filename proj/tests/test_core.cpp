#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "paletteforge/cooccurrence.hpp"
#include "paletteforge/image.hpp"
#include "paletteforge/scan.hpp"

using namespace paletteforge;
using testsupport::example_image;
using testsupport::random_image;

namespace {

// Independent oracle for the entropy checks: plain -sum q log2 q over counts.
double entropy_of_counts(const std::vector<std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    double h = 0.0;
    for (const auto c : counts) {
        if (c == 0) continue;
        const double q = double(c) / double(total);
        h -= q * std::log2(q);
    }
    return h;
}

}  // namespace

TEST_CASE("extract_indexed reproduces the worked example") {
    const IndexedImage expected = example_image();
    const IndexedImage extracted = extract_indexed(render(expected));
    CHECK(extracted.indices == expected.indices);
    CHECK(extracted.palette == expected.palette);
    CHECK(extracted.rows == 4);
    CHECK(extracted.cols == 4);
}

TEST_CASE("extract_indexed trivial cases") {
    RgbImage single{1, 1, {{0, 0, 0}}};
    const IndexedImage img = extract_indexed(single);
    CHECK(img.indices == std::vector<std::uint8_t>{0});
    CHECK(img.palette.colors == std::vector<ColorTriple>{{0, 0, 0}});

    RgbImage constant{3, 5, std::vector<ColorTriple>(15, ColorTriple{9, 9, 9})};
    const IndexedImage flat = extract_indexed(constant);
    CHECK(flat.palette_size() == 1);
    for (const auto v : flat.indices) CHECK(v == 0);
}

TEST_CASE("extract_indexed rejects more than 256 colors") {
    RgbImage img;
    img.rows = 17;
    img.cols = 17;  // 289 distinct colors
    for (std::uint32_t i = 0; i < 289; ++i) img.pixels.push_back(unpack_rgb(i));
    CHECK_THROWS_AS(extract_indexed(img), TooManyColors);
}

TEST_CASE("render round-trips extraction") {
    Rng rng(42);
    for (int i = 0; i < 25; ++i) {
        const IndexedImage img = random_image(rng, 12, 40);
        const RgbImage rendered = render(img);
        const IndexedImage again = extract_indexed(rendered);
        CHECK(render(again) == rendered);
    }
}

TEST_CASE("apply_permutation is render-invariant") {
    const IndexedImage img = example_image();

    SUBCASE("identity leaves the image unchanged") {
        CHECK(apply_permutation(img, Permutation::identity(4)) == img);
    }

    SUBCASE("swap of rows 0 and 1") {
        const Permutation swap{{1, 0, 2, 3}};
        const IndexedImage permuted = apply_permutation(img, swap);
        CHECK(permuted.index(0, 0) == 1);
        CHECK(permuted.palette.colors[0] == ColorTriple{60, 150, 200});
        CHECK(permuted.palette.colors[1] == ColorTriple{100, 20, 50});
        CHECK(render(permuted) == render(img));
    }

    SUBCASE("composition with the inverse is the identity") {
        Rng rng(7);
        for (int i = 0; i < 20; ++i) {
            const Permutation p = random_permutation(4, rng);
            CHECK(apply_permutation(apply_permutation(img, p), inverse(p)) == img);
        }
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(apply_permutation(img, Permutation::identity(3)), LengthMismatch);
    }
}

TEST_CASE("losslessness of reindexing on random images") {
    Rng rng(1234);
    for (int i = 0; i < 50; ++i) {
        const IndexedImage img = random_image(rng, 16, 64);
        const Permutation p = random_permutation(img.palette_size(), rng);
        const IndexedImage permuted = apply_permutation(img, p);
        CHECK(render(permuted) == render(img));
        validate(permuted);
    }
}

TEST_CASE("serpentine scan order") {
    SUBCASE("single row is emitted as-is") {
        IndexedImage img;
        img.rows = 1;
        img.cols = 5;
        img.indices = {0, 1, 2, 1, 0};
        img.palette.colors = {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}};
        CHECK(serpentine_scan(img).values == img.indices);
    }

    SUBCASE("worked example alternates row direction") {
        const ScanSequence seq = serpentine_scan(example_image());
        const std::vector<std::uint8_t> expected{0, 1, 1, 2, 1, 3, 3, 1, 2, 0, 1, 0, 0, 2, 1, 0};
        CHECK(seq.values == expected);
    }

    SUBCASE("constant image scans to a constant sequence") {
        IndexedImage img;
        img.rows = 3;
        img.cols = 3;
        img.indices.assign(9, 0);
        img.palette.colors = {{5, 5, 5}};
        for (const auto v : serpentine_scan(img).values) CHECK(v == 0);
    }

    SUBCASE("row-major mode flattens row by row") {
        const IndexedImage img = example_image();
        CHECK(scan(img, ScanMode::row_major).values == img.indices);
    }

    SUBCASE("consecutive serpentine elements are grid 4-neighbors") {
        Rng rng(99);
        for (int i = 0; i < 10; ++i) {
            const IndexedImage img = random_image(rng, 9, 16);
            // Recompute the visited coordinates the same way the scan does.
            std::vector<std::pair<std::size_t, std::size_t>> coords;
            for (std::size_t r = 0; r < img.rows; ++r) {
                if (r % 2 == 0)
                    for (std::size_t c = 0; c < img.cols; ++c) coords.emplace_back(r, c);
                else
                    for (std::size_t c = img.cols; c-- > 0;) coords.emplace_back(r, c);
            }
            for (std::size_t k = 1; k < coords.size(); ++k) {
                const auto [r1, c1] = coords[k - 1];
                const auto [r2, c2] = coords[k];
                const std::size_t dist = (r1 > r2 ? r1 - r2 : r2 - r1) +
                                         (c1 > c2 ? c1 - c2 : c2 - c1);
                CHECK(dist == 1);
            }
            const ScanSequence seq = scan(img, ScanMode::serpentine);
            for (std::size_t k = 0; k < coords.size(); ++k)
                CHECK(seq.values[k] == img.index(coords[k].first, coords[k].second));
        }
    }

    SUBCASE("unscan inverts both modes") {
        Rng rng(5);
        for (const ScanMode mode : {ScanMode::serpentine, ScanMode::row_major}) {
            const IndexedImage img = random_image(rng, 10, 30);
            const ScanSequence seq = scan(img, mode);
            CHECK(unscan(seq.values, img.rows, img.cols, mode) == img.indices);
        }
    }
}

TEST_CASE("neighbor_cost") {
    CHECK(neighbor_cost(ScanSequence{{3, 3, 3, 3}}) == 0);
    CHECK(neighbor_cost(ScanSequence{{7}}) == 0);
    CHECK(neighbor_cost(serpentine_scan(example_image())) == 16);
    CHECK(neighbor_cost(ScanSequence{{0, 255}}) == 255);

    SUBCASE("bounds") {
        Rng rng(21);
        for (int i = 0; i < 30; ++i) {
            const IndexedImage img = random_image(rng, 12, 32);
            const std::int64_t cost = neighbor_cost(serpentine_scan(img));
            CHECK(cost >= 0);
            CHECK(cost <= std::int64_t(img.pixel_count() - 1) *
                              std::int64_t(img.palette_size() - 1));
        }
    }
}

TEST_CASE("residuals") {
    SUBCASE("constant sequence") {
        const ResidualSequence res = residuals(ScanSequence{{3, 3, 3}});
        CHECK(res.first == 3);
        CHECK(res.deltas == std::vector<std::int16_t>{0, 0});
    }

    SUBCASE("worked example deltas") {
        const ResidualSequence res = residuals(serpentine_scan(example_image()));
        CHECK(res.first == 0);
        const std::vector<std::int16_t> expected{1, 0, 1, -1, 2, 0, -2, 1, -2, 1, -1, 0, 2, -1, -1};
        CHECK(res.deltas == expected);
        std::int64_t abs_sum = 0;
        for (const auto d : res.deltas) abs_sum += std::abs(d);
        CHECK(abs_sum == neighbor_cost(serpentine_scan(example_image())));
    }

    SUBCASE("reconstruction is the identity") {
        Rng rng(77);
        for (int i = 0; i < 30; ++i) {
            const IndexedImage img = random_image(rng, 14, 64);
            const ScanSequence seq = serpentine_scan(img);
            CHECK(reconstruct(residuals(seq)) == seq);
        }
    }
}

TEST_CASE("first_order_entropy") {
    SUBCASE("degenerate distributions") {
        CHECK(first_order_entropy(ResidualSequence{0, {2, 2, 2, 2}}) == doctest::Approx(0.0));
        CHECK(first_order_entropy(ResidualSequence{0, {1, -1}}) == doctest::Approx(1.0));
        CHECK(first_order_entropy(ResidualSequence{5, {}}) == 0.0);  // single-pixel convention
    }

    SUBCASE("worked example histogram {-2:2, -1:4, 0:3, 1:4, 2:2}") {
        const ResidualSequence res = residuals(serpentine_scan(example_image()));
        const double expected = entropy_of_counts({2, 4, 3, 4, 2});
        CHECK(first_order_entropy(res) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(first_order_entropy(res) == doctest::Approx(2.256564762130954).epsilon(1e-12));
    }

    SUBCASE("bounded by log2 of the support size") {
        Rng rng(31);
        for (int i = 0; i < 20; ++i) {
            const IndexedImage img = random_image(rng, 10, 32);
            const ResidualSequence res = residuals(serpentine_scan(img));
            if (res.deltas.empty()) continue;
            std::set<std::int16_t> support(res.deltas.begin(), res.deltas.end());
            const double h = first_order_entropy(res);
            CHECK(h >= 0.0);
            CHECK(h <= std::log2(double(support.size())) + 1e-9);
        }
    }
}

TEST_CASE("cooccurrence matrix") {
    SUBCASE("constant image concentrates on the diagonal") {
        IndexedImage img;
        img.rows = 4;
        img.cols = 3;
        img.indices.assign(12, 0);
        img.palette.colors = {{8, 8, 8}};
        const auto matrix = CooccurrenceMatrix::from_image(img, ScanMode::serpentine);
        CHECK(matrix.at(0, 0) == 11);
        CHECK(matrix.adjacency_total() == 11);
        CHECK(matrix.pairs().empty());
    }

    SUBCASE("identity evaluation matches the direct cost on the example") {
        const IndexedImage img = example_image();
        const auto matrix = CooccurrenceMatrix::from_image(img, ScanMode::serpentine);
        CHECK(matrix.evaluate(Permutation::identity(4)) == 16);
    }

    SUBCASE("matrix cost equals direct cost for random permutations") {
        Rng rng(1212);
        for (int trial = 0; trial < 50; ++trial) {
            IndexedImage img = random_image(rng, 8, 5);
            img.rows = 8;
            img.cols = 8;
            img.indices.resize(64);
            for (auto& v : img.indices)
                v = std::uint8_t(uniform_below(rng, img.palette_size()));
            for (std::size_t k = 0; k < img.palette_size(); ++k) img.indices[k] = std::uint8_t(k);

            const auto matrix = CooccurrenceMatrix::from_image(img, ScanMode::serpentine);
            const Permutation p = random_permutation(img.palette_size(), rng);
            const std::int64_t direct = neighbor_cost(serpentine_scan(apply_permutation(img, p)));
            CHECK(matrix.evaluate(p) == direct);
        }
    }

    SUBCASE("symmetry and adjacency totals") {
        Rng rng(3344);
        const IndexedImage img = random_image(rng, 12, 24);
        const auto matrix = CooccurrenceMatrix::from_image(img, ScanMode::serpentine);
        std::uint64_t upper_total = 0;
        for (std::size_t a = 0; a < matrix.palette_size(); ++a) {
            upper_total += matrix.at(a, a);
            for (std::size_t b = a + 1; b < matrix.palette_size(); ++b) {
                CHECK(matrix.at(a, b) == matrix.at(b, a));
                upper_total += matrix.at(a, b);
            }
        }
        CHECK(upper_total == img.pixel_count() - 1);
    }
}

TEST_CASE("scan mode names") {
    CHECK(parse_scan_mode("serpentine") == ScanMode::serpentine);
    CHECK(parse_scan_mode("rowmajor") == ScanMode::row_major);
    CHECK(parse_scan_mode("row-major") == ScanMode::row_major);
    CHECK_THROWS_AS(parse_scan_mode("diagonal"), BadParams);
    CHECK(to_string(ScanMode::serpentine) == "serpentine");
}
