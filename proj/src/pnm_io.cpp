#include "skinseg/pnm_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace skinseg {

namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& is) {
    for (;;) {
        int c = is.peek();
        if (c == '#') {
            is.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            is.get();
        } else {
            return;
        }
    }
}

long header_number(std::istream& is, const char* what) {
    skip_separators(is);
    long v = -1;
    if (!(is >> v) || v < 0) throw IoError(std::string("pnm: bad header field: ") + what);
    return v;
}

char magic_digit(std::istream& is) {
    char p = 0, d = 0;
    if (!is.get(p) || p != 'P' || !is.get(d)) throw IoError("pnm: missing magic number");
    return d;
}

struct Header {
    long w = 0;
    long h = 0;
    long maxval = 0;
};

Header read_header(std::istream& is, bool has_maxval, const char* kind) {
    Header hd;
    hd.w = header_number(is, "width");
    hd.h = header_number(is, "height");
    if (has_maxval) {
        hd.maxval = header_number(is, "maxval");
        if (hd.maxval < 1 || hd.maxval > 255)
            throw UnsupportedFormat(std::string(kind) +
                                    ": only one-byte samples supported (maxval 1..255)");
    }
    if (hd.w <= 0 || hd.h <= 0) throw IoError(std::string(kind) + ": non-positive dimensions");
    // single whitespace byte separates header from raster
    is.get();
    return hd;
}

}  // namespace

PnmKind sniff_pnm(std::istream& is) {
    const auto pos = is.tellg();
    const char d = magic_digit(is);
    is.seekg(pos);
    switch (d) {
        case '4': return PnmKind::PBM;
        case '5': return PnmKind::PGM;
        case '6': return PnmKind::PPM;
        default:
            throw UnsupportedFormat(std::string("pnm: unsupported magic P") + d +
                                    " (only raw P4/P5/P6)");
    }
}

Rgb444Image read_ppm(std::istream& is) {
    if (magic_digit(is) != '6') throw UnsupportedFormat("read_ppm: expected P6");
    const Header hd = read_header(is, true, "ppm");
    Rgb444Image img(static_cast<int>(hd.w), static_cast<int>(hd.h));
    std::vector<char> row(static_cast<std::size_t>(hd.w) * 3);
    for (long y = 0; y < hd.h; ++y) {
        if (!is.read(row.data(), static_cast<std::streamsize>(row.size())))
            throw IoError("read_ppm: truncated raster");
        for (long x = 0; x < hd.w; ++x) {
            const auto r = static_cast<std::uint8_t>(row[x * 3 + 0]);
            const auto g = static_cast<std::uint8_t>(row[x * 3 + 1]);
            const auto b = static_cast<std::uint8_t>(row[x * 3 + 2]);
            img.at(static_cast<int>(x), static_cast<int>(y)) =
                Rgb444Pixel(r >> 4, g >> 4, b >> 4);
        }
    }
    return img;
}

void write_ppm(std::ostream& os, const Rgb444Image& img) {
    os << "P6\n" << img.w << " " << img.h << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(img.w) * 3);
    for (int y = 0; y < img.h; ++y) {
        for (int x = 0; x < img.w; ++x) {
            const Rgb444Pixel& p = img.at(x, y);
            row[x * 3 + 0] = static_cast<char>(p.r * 17);
            row[x * 3 + 1] = static_cast<char>(p.g * 17);
            row[x * 3 + 2] = static_cast<char>(p.b * 17);
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!os) throw IoError("write_ppm: stream write failed");
}

BitFrame read_pgm_as_bits(std::istream& is) {
    if (magic_digit(is) != '5') throw UnsupportedFormat("read_pgm: expected P5");
    const Header hd = read_header(is, true, "pgm");
    BitFrame frame(static_cast<int>(hd.w), static_cast<int>(hd.h));
    std::vector<char> row(static_cast<std::size_t>(hd.w));
    for (long y = 0; y < hd.h; ++y) {
        if (!is.read(row.data(), static_cast<std::streamsize>(row.size())))
            throw IoError("read_pgm: truncated raster");
        for (long x = 0; x < hd.w; ++x)
            frame.set(static_cast<int>(x), static_cast<int>(y), row[x] != 0 ? 1 : 0);
    }
    return frame;
}

BitFrame read_pbm(std::istream& is) {
    if (magic_digit(is) != '4') throw UnsupportedFormat("read_pbm: expected P4");
    const Header hd = read_header(is, false, "pbm");
    BitFrame frame(static_cast<int>(hd.w), static_cast<int>(hd.h));
    const std::size_t row_bytes = (static_cast<std::size_t>(hd.w) + 7) / 8;
    std::vector<char> row(row_bytes);
    for (long y = 0; y < hd.h; ++y) {
        if (!is.read(row.data(), static_cast<std::streamsize>(row_bytes)))
            throw IoError("read_pbm: truncated raster");
        for (long x = 0; x < hd.w; ++x) {
            const auto byte = static_cast<std::uint8_t>(row[x / 8]);
            frame.set(static_cast<int>(x), static_cast<int>(y),
                      (byte >> (7 - (x % 8))) & 1);
        }
    }
    return frame;
}

void write_pbm(std::ostream& os, const BitFrame& frame) {
    os << "P4\n" << frame.w << " " << frame.h << "\n";
    const std::size_t row_bytes = (static_cast<std::size_t>(frame.w) + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int y = 0; y < frame.h; ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < frame.w; ++x)
            if (frame.at(x, y)) row[x / 8] |= static_cast<char>(0x80 >> (x % 8));
        os.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
    if (!os) throw IoError("write_pbm: stream write failed");
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

}  // namespace

Rgb444Image read_ppm_file(const std::string& path) {
    auto f = open_in(path);
    return read_ppm(f);
}

BitFrame read_binary_image_file(const std::string& path) {
    auto f = open_in(path);
    switch (sniff_pnm(f)) {
        case PnmKind::PBM: return read_pbm(f);
        case PnmKind::PGM: return read_pgm_as_bits(f);
        default:
            throw UnsupportedFormat("expected a binary image (P4/P5): " + path);
    }
}

void write_pbm_file(const std::string& path, const BitFrame& frame) {
    auto f = open_out(path);
    write_pbm(f, frame);
}

void write_ppm_file(const std::string& path, const Rgb444Image& img) {
    auto f = open_out(path);
    write_ppm(f, img);
}

}  // namespace skinseg
