// Drives the installed CLI binary end to end through std::system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "helpers.hpp"
#include "paletteforge/codec.hpp"
#include "paletteforge/ppm.hpp"
#include "paletteforge/quantize.hpp"

using namespace paletteforge;
using testsupport::random_image;

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(PALETTEFORGE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::uint8_t> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("cli round trip and exit codes") {
    const fs::path dir =
        fs::temp_directory_path() / ("paletteforge-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    Rng rng(808);
    IndexedImage source = random_image(rng, 24, 48);
    while (source.palette_size() < 13 || source.pixel_count() < 64)
        source = random_image(rng, 24, 48);
    const RgbImage original = render(source);
    const fs::path input = dir / "input.ppm";
    write_ppm(input, original);

    const fs::path blob_path = dir / "image.pfz";
    const fs::path roundtrip = dir / "roundtrip.ppm";

    SUBCASE("compress then decompress reproduces the quantized image") {
        REQUIRE(run("compress " + input.string() + " " + blob_path.string() +
                    " --colors 16 --strategy greedy_chain") == 0);
        REQUIRE(run("decompress " + blob_path.string() + " " + roundtrip.string()) == 0);

        const RgbImage out = load_ppm(roundtrip);
        const IndexedImage quantized = quantize_median_cut(original, 16);
        CHECK(out == render(quantized));
    }

    SUBCASE("exact extract path when the palette fits") {
        RgbImage tiny;
        tiny.rows = 2;
        tiny.cols = 2;
        tiny.pixels = {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}, {7, 8, 9}};
        const fs::path tiny_path = dir / "tiny.ppm";
        write_ppm(tiny_path, tiny);
        REQUIRE(run("compress " + tiny_path.string() + " " + blob_path.string() +
                    " --colors 16 --strategy identity") == 0);
        REQUIRE(run("decompress " + blob_path.string() + " " + roundtrip.string()) == 0);
        CHECK(load_ppm(roundtrip) == tiny);
    }

    SUBCASE("unknown strategy exits 2") {
        CHECK(run("compress " + input.string() + " " + blob_path.string() +
                  " --strategy hillclimb") == 2);
    }

    SUBCASE("missing input exits 1") {
        CHECK(run("compress " + (dir / "nope.ppm").string() + " " + blob_path.string()) == 1);
        CHECK(run("decompress " + (dir / "nope.pfz").string() + " " + roundtrip.string()) == 1);
    }

    SUBCASE("corrupt container exits 3") {
        REQUIRE(run("compress " + input.string() + " " + blob_path.string() +
                    " --colors 8 --strategy identity") == 0);
        auto bytes = slurp(blob_path);
        bytes[bytes.size() - 6] ^= 0x10;  // payload region; CRC must catch it
        std::ofstream out(blob_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        out.close();
        CHECK(run("decompress " + blob_path.string() + " " + roundtrip.string()) == 3);
    }

    SUBCASE("oracle runs for small palettes") {
        CHECK(run("oracle " + input.string() + " --colors 6") == 0);
        CHECK(run("oracle " + input.string() + " --colors 12") == 1);  // over the cap
    }

    SUBCASE("usage errors exit 2") {
        CHECK(run("") == 2);
        CHECK(run("compress onlyone.ppm") == 2);
        CHECK(run("frobnicate x y") == 2);
    }

    SUBCASE("bench subcommand writes reports and reruns identically") {
        const fs::path config = dir / "bench.cfg";
        {
            std::ofstream out(config);
            out << "images = " << input.string() << "\n"
                << "colors = 8\n"
                << "strategies = identity, luminance\n"
                << "repetitions = 2\n";
        }
        const fs::path out_a = dir / "out_a";
        const fs::path out_b = dir / "out_b";
        REQUIRE(run("bench --config " + config.string() + " --out " + out_a.string()) == 0);
        REQUIRE(run("bench --config " + config.string() + " --out " + out_b.string()) == 0);
        CHECK(slurp(out_a / "bench.csv") == slurp(out_b / "bench.csv"));
        CHECK(slurp(out_a / "summary.csv") == slurp(out_b / "summary.csv"));
        CHECK(!slurp(out_a / "timings.csv").empty());

        const fs::path bad_config = dir / "bad.cfg";
        {
            std::ofstream out(bad_config);
            out << "images = " << input.string() << "\nworkers = 3\n";
        }
        CHECK(run("bench --config " + bad_config.string()) == 2);  // unknown key
        CHECK(run("bench") == 2);                                  // missing --config
    }

    fs::remove_all(dir);
}
