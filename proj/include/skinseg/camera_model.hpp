#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "skinseg/color_space.hpp"
#include "skinseg/errors.hpp"

namespace skinseg {

enum class PixelFormat { RGB444, UNSUPPORTED };

// Behavioral register file of the sensor. Only format selection is
// modeled: register kFormatRegister holding kRgb444Code selects RGB444,
// anything else is UNSUPPORTED. Other registers are stored but ignored.
class CameraRegisterFile {
public:
    static constexpr std::uint8_t kFormatRegister = 0x12;
    static constexpr std::uint8_t kRgb444Code = 0x04;

    void write_register(std::uint8_t addr, std::uint8_t value) { regs_[addr] = value; }
    std::uint8_t read_register(std::uint8_t addr) const { return regs_[addr]; }

    PixelFormat format() const {
        return regs_[kFormatRegister] == kRgb444Code ? PixelFormat::RGB444
                                                     : PixelFormat::UNSUPPORTED;
    }

private:
    std::array<std::uint8_t, 256> regs_{};
};

// One pixel-clock tick of the 8-bit camera bus with its sync signals.
// href is asserted only while vsync is low; d is meaningful only when
// href is high.
struct SyncedByte {
    std::uint8_t d = 0;
    bool vsync = false;
    bool href = false;
    std::uint64_t t = 0;
};

// Pixel reassembled from the byte stream together with its raster position.
struct PixelSample {
    Rgb444Pixel pixel;
    int x = 0;
    int y = 0;
    int frame = 0;
};

// Active raster size plus blanking intervals. pclk_hz is informational only;
// the pipeline is gated by href, not wall-clock time.
struct StreamTiming {
    int w = 640;
    int h = 480;
    int h_blank = 16;   // inactive cycles after each line
    int v_blank = 2;    // vsync lines after each frame
    long pclk_hz = 25'000'000;

    void validate() const {
        if (w <= 0 || h <= 0) throw BadGeometry("StreamTiming: active size must be positive");
        if (h_blank < 0) throw BadGeometry("StreamTiming: h_blank must be >= 0");
        if (v_blank < 1) throw BadGeometry("StreamTiming: v_blank must be >= 1");
    }
};

// Serializes one frame. Each pixel becomes two href-high bytes:
// first 0000|r, then g<<4|b. Every active line is followed by h_blank
// href-low cycles; the frame is closed by v_blank full-length vsync lines.
// Throws UnsupportedFormat unless regs select RGB444, DimensionMismatch if
// the image does not match the timing.
std::vector<SyncedByte> emit_frame(const Rgb444Image& image, const StreamTiming& timing,
                                   const CameraRegisterFile& regs);

// Capture side: pairs href-high bytes back into pixels and assigns
// (x, y, frame) from the href/vsync framing. Inverse of emit_frame.
// Throws PhaseError on an odd href run, FrameGeometryError when lines or
// frames have the wrong shape.
std::vector<PixelSample> assemble_pixels(std::span<const SyncedByte> stream,
                                         const StreamTiming& timing);

// Rebuilds a full raster from the samples of one frame.
Rgb444Image samples_to_image(std::span<const PixelSample> samples, const StreamTiming& timing,
                             int frame_index);

// .cambytes file format: one 2-byte little-endian record per tick,
// bits [7:0] = d, bit 8 = href, bit 9 = vsync, upper bits zero.
void write_cambytes(std::ostream& os, std::span<const SyncedByte> stream);
std::vector<SyncedByte> read_cambytes(std::istream& is);

}  // namespace skinseg
