#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skinseg/errors.hpp"

namespace skinseg {

// Row-major pixel address within a frame; 19 bits cover 640*480 = 307200.
std::uint32_t addr_of(int x, int y, int w);

// Simple dual-port, 1-bit-wide block RAM: one write port, one read port,
// 19-bit addressing, synchronous one-step read latency. write() and
// read_request() register the ports' inputs; step() is the clock edge.
// Read-during-write to the same address returns the old value (read-first).
class BitFrameBuffer {
public:
    static constexpr std::uint32_t kAddressBits = 19;
    static constexpr std::uint32_t kCapacity = 1u << kAddressBits;  // 524288 bits

    BitFrameBuffer() : storage_(kCapacity, 0) {}

    void write(std::uint32_t addr, bool value, bool we);
    void read_request(std::uint32_t addr);

    // Value of the address requested one step earlier; holds between reads.
    bool read_data() const { return read_out_; }

    void step();

private:
    std::vector<std::uint8_t> storage_;
    std::optional<std::pair<std::uint32_t, bool>> pending_write_;
    std::optional<std::uint32_t> pending_read_;
    bool read_out_ = false;
};

}  // namespace skinseg
