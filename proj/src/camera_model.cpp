#include "skinseg/camera_model.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>

namespace skinseg {

std::vector<SyncedByte> emit_frame(const Rgb444Image& image, const StreamTiming& timing,
                                   const CameraRegisterFile& regs) {
    timing.validate();
    if (regs.format() != PixelFormat::RGB444)
        throw UnsupportedFormat("emit_frame: camera registers do not select RGB444");
    if (image.w != timing.w || image.h != timing.h)
        throw DimensionMismatch("emit_frame: image is " + std::to_string(image.w) + "x" +
                                std::to_string(image.h) + ", timing expects " +
                                std::to_string(timing.w) + "x" + std::to_string(timing.h));

    std::vector<SyncedByte> out;
    const std::size_t line_len = 2u * timing.w + timing.h_blank;
    out.reserve(line_len * (timing.h + timing.v_blank));

    std::uint64_t t = 0;
    auto tick = [&](std::uint8_t d, bool href, bool vsync) {
        out.push_back(SyncedByte{d, vsync, href, t++});
    };

    for (int y = 0; y < timing.h; ++y) {
        for (int x = 0; x < timing.w; ++x) {
            const Rgb444Pixel& p = image.at(x, y);
            tick(p.r, true, false);
            tick(static_cast<std::uint8_t>((p.g << 4) | p.b), true, false);
        }
        for (int k = 0; k < timing.h_blank; ++k) tick(0, false, false);
    }
    for (int line = 0; line < timing.v_blank; ++line)
        for (std::size_t k = 0; k < line_len; ++k) tick(0, false, true);

    return out;
}

std::vector<PixelSample> assemble_pixels(std::span<const SyncedByte> stream,
                                         const StreamTiming& timing) {
    timing.validate();
    std::vector<PixelSample> out;

    int x = 0, y = 0, frame = 0;
    std::optional<std::uint8_t> pending;   // first byte of a pixel pair
    bool in_vsync = false;                 // saw vsync since the last active byte
    bool frame_has_pixels = false;

    auto close_frame = [&](const char* where) {
        if (x != 0 || y != timing.h)
            throw FrameGeometryError(std::string("assemble_pixels: frame ") +
                                     std::to_string(frame) + " has " + std::to_string(y) +
                                     " complete lines (expected " + std::to_string(timing.h) +
                                     ") at " + where);
    };

    for (const SyncedByte& sb : stream) {
        if (sb.href && sb.vsync)
            throw PhaseError("assemble_pixels: href asserted during vsync at t=" +
                             std::to_string(sb.t));
        if (sb.href) {
            if (in_vsync) {
                // first active byte of a new frame
                if (frame_has_pixels) ++frame;
                x = 0;
                y = 0;
                in_vsync = false;
                frame_has_pixels = false;
            }
            if (!pending) {
                pending = sb.d;
            } else {
                if (y >= timing.h)
                    throw FrameGeometryError("assemble_pixels: more than " +
                                             std::to_string(timing.h) + " lines in frame " +
                                             std::to_string(frame));
                const Rgb444Pixel px(*pending & 0x0F, (sb.d >> 4) & 0x0F, sb.d & 0x0F);
                out.push_back(PixelSample{px, x, y, frame});
                frame_has_pixels = true;
                pending.reset();
                if (++x == timing.w) {
                    x = 0;
                    ++y;
                }
            }
        } else {
            if (pending)
                throw PhaseError("assemble_pixels: href run of odd length ends at t=" +
                                 std::to_string(sb.t));
            if (x != 0)
                throw FrameGeometryError("assemble_pixels: line " + std::to_string(y) +
                                         " of frame " + std::to_string(frame) + " has " +
                                         std::to_string(x) + " pixels (expected " +
                                         std::to_string(timing.w) + ")");
            if (sb.vsync && !in_vsync) {
                if (frame_has_pixels) close_frame("vsync");
                in_vsync = true;
            }
        }
    }

    if (pending) throw PhaseError("assemble_pixels: stream ends inside a pixel pair");
    if (frame_has_pixels && !in_vsync) close_frame("end of stream");
    return out;
}

Rgb444Image samples_to_image(std::span<const PixelSample> samples, const StreamTiming& timing,
                             int frame_index) {
    Rgb444Image img(timing.w, timing.h);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(timing.w) * timing.h, 0);
    std::size_t filled = 0;
    for (const PixelSample& s : samples) {
        if (s.frame != frame_index) continue;
        img.at(s.x, s.y) = s.pixel;
        std::uint8_t& flag = seen[static_cast<std::size_t>(s.y) * timing.w + s.x];
        if (!flag) {
            flag = 1;
            ++filled;
        }
    }
    if (filled != seen.size())
        throw FrameGeometryError("samples_to_image: frame " + std::to_string(frame_index) +
                                 " covers " + std::to_string(filled) + " of " +
                                 std::to_string(seen.size()) + " pixels");
    return img;
}

void write_cambytes(std::ostream& os, std::span<const SyncedByte> stream) {
    for (const SyncedByte& sb : stream) {
        const std::uint16_t rec = static_cast<std::uint16_t>(
            sb.d | (sb.href ? 0x100 : 0) | (sb.vsync ? 0x200 : 0));
        const char le[2] = {static_cast<char>(rec & 0xFF), static_cast<char>(rec >> 8)};
        os.write(le, 2);
    }
    if (!os) throw IoError("write_cambytes: stream write failed");
}

std::vector<SyncedByte> read_cambytes(std::istream& is) {
    std::vector<SyncedByte> out;
    char le[2];
    std::uint64_t t = 0;
    while (is.read(le, 2)) {
        const std::uint16_t rec = static_cast<std::uint16_t>(
            static_cast<std::uint8_t>(le[0]) | (static_cast<std::uint8_t>(le[1]) << 8));
        SyncedByte sb;
        sb.d = static_cast<std::uint8_t>(rec & 0xFF);
        sb.href = (rec & 0x100) != 0;
        sb.vsync = (rec & 0x200) != 0;
        sb.t = t++;
        out.push_back(sb);
    }
    if (is.gcount() != 0)
        throw IoError("read_cambytes: trailing partial record (file truncated mid-record)");
    return out;
}

}  // namespace skinseg
