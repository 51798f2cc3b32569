#pragma once

#include <cstdint>
#include <vector>

#include "skinseg/errors.hpp"

namespace skinseg {

// W x H binary raster, row-major. One byte per bit; values are 0 or 1.
struct BitFrame {
    int w = 0;
    int h = 0;
    std::vector<std::uint8_t> bits;

    BitFrame() = default;
    BitFrame(int width, int height)
        : w(width), h(height), bits(static_cast<std::size_t>(width) * height, 0) {
        if (width <= 0 || height <= 0)
            throw BadGeometry("BitFrame: dimensions must be positive");
    }

    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * w + x]; }
    void set(int x, int y, std::uint8_t v) { bits[static_cast<std::size_t>(y) * w + x] = v; }

    std::size_t count_ones() const {
        std::size_t n = 0;
        for (std::uint8_t b : bits) n += b;
        return n;
    }

    bool operator==(const BitFrame& o) const = default;
};

}  // namespace skinseg
