#include "paletteforge/ppm.hpp"

#include <fstream>
#include <string>

namespace paletteforge {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch)) {
        token.push_back(char(ch));
        ch = in.get();
    }
    return token;
}

std::size_t parse_dimension(const std::string& token, const char* what) {
    if (token.empty()) throw MalformedHeader(std::string("ppm: missing ") + what);
    std::size_t value = 0;
    for (const char c : token) {
        if (c < '0' || c > '9')
            throw MalformedHeader(std::string("ppm: non-numeric ") + what);
        value = value * 10 + std::size_t(c - '0');
        if (value > 1u << 24) throw MalformedHeader(std::string("ppm: oversized ") + what);
    }
    return value;
}

}  // namespace

RgbImage load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("ppm: cannot open " + path.string());

    const std::string magic = next_token(in);
    if (magic != "P6") throw UnsupportedFormat("ppm: only binary P6 is supported");

    const std::size_t width = parse_dimension(next_token(in), "width");
    const std::size_t height = parse_dimension(next_token(in), "height");
    const std::size_t maxval = parse_dimension(next_token(in), "maxval");
    if (width == 0 || height == 0) throw MalformedHeader("ppm: zero dimension");
    if (maxval != 255) throw UnsupportedFormat("ppm: only maxval 255 is supported");
    // The token reader consumed the single whitespace after maxval already.

    RgbImage img;
    img.rows = height;
    img.cols = width;
    img.pixels.resize(width * height);
    std::vector<char> raw(width * height * 3);
    in.read(raw.data(), std::streamsize(raw.size()));
    if (std::size_t(in.gcount()) != raw.size())
        throw MalformedHeader("ppm: pixel data truncated");

    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        img.pixels[i] = ColorTriple{std::uint8_t(raw[3 * i]), std::uint8_t(raw[3 * i + 1]),
                                    std::uint8_t(raw[3 * i + 2])};
    }
    return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
    if (img.pixel_count() == 0 || img.pixels.size() != img.pixel_count())
        throw BadParams("ppm: refusing to write an empty image");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("ppm: cannot open " + path.string() + " for writing");

    out << "P6\n" << img.cols << " " << img.rows << "\n255\n";
    std::vector<char> raw;
    raw.reserve(img.pixels.size() * 3);
    for (const ColorTriple c : img.pixels) {
        raw.push_back(char(c.r));
        raw.push_back(char(c.g));
        raw.push_back(char(c.b));
    }
    out.write(raw.data(), std::streamsize(raw.size()));
    if (!out) throw IoError("ppm: write failed for " + path.string());
}

}  // namespace paletteforge
