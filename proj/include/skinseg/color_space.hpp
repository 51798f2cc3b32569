#pragma once

#include <cstdint>
#include <vector>

#include "skinseg/bit_frame.hpp"
#include "skinseg/errors.hpp"

namespace skinseg {

// One camera pixel in RGB444: three 4-bit channels packed on the wire as
// (r<<8)|(g<<4)|b.
struct Rgb444Pixel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    Rgb444Pixel() = default;
    Rgb444Pixel(int red, int green, int blue);

    std::uint16_t packed() const {
        return static_cast<std::uint16_t>((r << 8) | (g << 4) | b);
    }
    static Rgb444Pixel from_packed(std::uint16_t word);

    bool operator==(const Rgb444Pixel& o) const = default;
};

// Pixel after the reversible component transformation: 4-bit luma,
// signed chroma u = r-g and v = b-g, each in [-15, 15].
struct YuvPixel {
    int y = 0;
    int u = 0;
    int v = 0;

    bool operator==(const YuvPixel& o) const = default;
};

// Skin band on the U channel, expressed at the camera's native 8-bit scale.
struct ThresholdConfig {
    int t_lo = 10;
    int t_hi = 74;

    void validate() const {
        if (t_lo < 0 || t_hi > 255 || t_lo >= t_hi)
            throw UsageError("thresholds must satisfy 0 <= t_lo < t_hi <= 255");
    }
};

// Row-major raster of RGB444 pixels.
struct Rgb444Image {
    int w = 0;
    int h = 0;
    std::vector<Rgb444Pixel> pixels;

    Rgb444Image() = default;
    Rgb444Image(int width, int height)
        : w(width), h(height), pixels(static_cast<std::size_t>(width) * height) {
        if (width <= 0 || height <= 0)
            throw BadGeometry("Rgb444Image: dimensions must be positive");
    }

    const Rgb444Pixel& at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * w + x];
    }
    Rgb444Pixel& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * w + x]; }

    bool operator==(const Rgb444Image& o) const = default;
};

// Forward transform: y = floor((r + 2g + b)/4), u = r-g, v = b-g.
YuvPixel rgb_to_yuv(const Rgb444Pixel& p);

// Exact inverse: g = y - floor((u+v)/4) (floor toward -inf), r = u+g,
// b = v+g. Throws OutOfRange if q is not in the image of rgb_to_yuv.
Rgb444Pixel yuv_to_rgb(const YuvPixel& q);

// 1 iff t_lo < 16*u < t_hi. The 4-bit chroma is upscaled x16 so the
// published 8-bit-scale bounds apply verbatim; at the defaults this is
// exactly u in {1,2,3,4}.
bool classify_skin(int u, const ThresholdConfig& cfg);

// Per-pixel classify_skin(rgb_to_yuv(.).u) over a whole raster.
BitFrame threshold_frame(const Rgb444Image& frame, const ThresholdConfig& cfg);

}  // namespace skinseg
