#include "skinseg/frame_buffer.hpp"

#include <string>

namespace skinseg {

std::uint32_t addr_of(int x, int y, int w) {
    if (w <= 0) throw OutOfRange("addr_of: width must be positive");
    if (x < 0 || x >= w) throw OutOfRange("addr_of: column " + std::to_string(x) +
                                          " outside [0," + std::to_string(w) + ")");
    if (y < 0) throw OutOfRange("addr_of: negative row");
    const std::uint64_t addr = static_cast<std::uint64_t>(y) * w + x;
    if (addr >= BitFrameBuffer::kCapacity)
        throw OutOfRange("addr_of: address " + std::to_string(addr) + " exceeds 2^19");
    return static_cast<std::uint32_t>(addr);
}

void BitFrameBuffer::write(std::uint32_t addr, bool value, bool we) {
    if (addr >= kCapacity)
        throw OutOfRange("BitFrameBuffer::write: address exceeds 2^19");
    if (we) pending_write_ = {addr, value};
}

void BitFrameBuffer::read_request(std::uint32_t addr) {
    if (addr >= kCapacity)
        throw OutOfRange("BitFrameBuffer::read_request: address exceeds 2^19");
    pending_read_ = addr;
}

void BitFrameBuffer::step() {
    // Read port samples before the write commits: read-first collision rule.
    if (pending_read_) {
        read_out_ = storage_[*pending_read_] != 0;
        pending_read_.reset();
    }
    if (pending_write_) {
        storage_[pending_write_->first] = pending_write_->second ? 1 : 0;
        pending_write_.reset();
    }
}

}  // namespace skinseg
