#pragma once

#include <iosfwd>
#include <string>

#include "skinseg/bit_frame.hpp"
#include "skinseg/color_space.hpp"

namespace skinseg {

enum class PnmKind { PBM, PGM, PPM };

PnmKind sniff_pnm(std::istream& is);

// P6, one byte per sample (maxval <= 255). Channels are reduced to 4 bits
// by taking the high nibble, matching how a 12-bit-color board truncates
// 8-bit sources.
Rgb444Image read_ppm(std::istream& is);

// P6 with maxval 255; 4-bit channels are expanded as v*17 so a read round
// trip is exact.
void write_ppm(std::ostream& os, const Rgb444Image& img);

// P5 (one byte per sample): nonzero means 1. P4: raw bit-packed, MSB first,
// set bit means 1.
BitFrame read_pgm_as_bits(std::istream& is);
BitFrame read_pbm(std::istream& is);

// P4 mask output: set bit = 1 (renders black).
void write_pbm(std::ostream& os, const BitFrame& frame);

// Convenience file wrappers; throw IoError on open failure.
Rgb444Image read_ppm_file(const std::string& path);
BitFrame read_binary_image_file(const std::string& path);  // PBM or PGM
void write_pbm_file(const std::string& path, const BitFrame& frame);
void write_ppm_file(const std::string& path, const Rgb444Image& img);

}  // namespace skinseg
