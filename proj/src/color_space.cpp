#include "skinseg/color_space.hpp"

#include <string>

namespace skinseg {

namespace {

int check_channel(int v, const char* name) {
    if (v < 0 || v > 15)
        throw OutOfRange(std::string("Rgb444Pixel: channel ") + name + " out of [0,15]: " +
                         std::to_string(v));
    return v;
}

// Floor division toward -inf; the inverse transform needs it for
// signed chroma sums.
int floor_div4(int v) {
    return (v >= 0) ? v / 4 : -((-v + 3) / 4);
}

}  // namespace

Rgb444Pixel::Rgb444Pixel(int red, int green, int blue)
    : r(static_cast<std::uint8_t>(check_channel(red, "r"))),
      g(static_cast<std::uint8_t>(check_channel(green, "g"))),
      b(static_cast<std::uint8_t>(check_channel(blue, "b"))) {}

Rgb444Pixel Rgb444Pixel::from_packed(std::uint16_t word) {
    if (word > 0x0FFF)
        throw OutOfRange("Rgb444Pixel: packed word exceeds 12 bits");
    return Rgb444Pixel((word >> 8) & 0xF, (word >> 4) & 0xF, word & 0xF);
}

YuvPixel rgb_to_yuv(const Rgb444Pixel& p) {
    YuvPixel q;
    q.y = (p.r + 2 * p.g + p.b) / 4;
    q.u = p.r - p.g;
    q.v = p.b - p.g;
    return q;
}

Rgb444Pixel yuv_to_rgb(const YuvPixel& q) {
    const int g = q.y - floor_div4(q.u + q.v);
    const int r = q.u + g;
    const int b = q.v + g;
    if (r < 0 || r > 15 || g < 0 || g > 15 || b < 0 || b > 15)
        throw OutOfRange("yuv_to_rgb: (" + std::to_string(q.y) + "," + std::to_string(q.u) +
                         "," + std::to_string(q.v) + ") reconstructs outside RGB444");
    return Rgb444Pixel(r, g, b);
}

bool classify_skin(int u, const ThresholdConfig& cfg) {
    const int u8 = 16 * u;
    return cfg.t_lo < u8 && u8 < cfg.t_hi;
}

BitFrame threshold_frame(const Rgb444Image& frame, const ThresholdConfig& cfg) {
    BitFrame out(frame.w, frame.h);
    for (int y = 0; y < frame.h; ++y)
        for (int x = 0; x < frame.w; ++x)
            out.set(x, y, classify_skin(rgb_to_yuv(frame.at(x, y)).u, cfg) ? 1 : 0);
    return out;
}

}  // namespace skinseg
