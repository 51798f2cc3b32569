#include "skinseg/window_pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <ostream>
#include <string>

namespace skinseg {

void PipelineGeometry::validate() const {
    if (w <= 0 || h <= 0)
        throw BadGeometry("geometry: frame dimensions must be positive");
    if (n % 2 == 0)
        throw BadGeometry("geometry: window size " + std::to_string(n) + " must be odd");
    if (n < 3)
        throw BadGeometry("geometry: window size must be at least 3");
    if (n > std::min(w, h))
        throw BadGeometry("geometry: window " + std::to_string(n) + " exceeds frame " +
                          std::to_string(w) + "x" + std::to_string(h));
    if (m < 0 || m >= n * n)
        throw BadGeometry("geometry: majority threshold " + std::to_string(m) +
                          " outside [0," + std::to_string(n * n) + ")");
}

LineFifo::LineFifo(std::size_t delay, std::size_t capacity)
    : slots_(capacity, 0),
      mask_(capacity - 1),
      delay_(delay),
      trigger_(delay >= 2 ? delay - 2 : 0) {
    if (capacity == 0 || (capacity & (capacity - 1)) != 0)
        throw BadGeometry("LineFifo: capacity must be a power of two");
    if (trigger_ > capacity)
        throw BadGeometry("LineFifo: delay exceeds capacity");
}

bool LineFifo::push_pop(bool din) {
    if (!reading_ && count_ >= trigger_) reading_ = true;
    std::uint8_t popped = 0;
    if (reading_) {
        if (count_ > 0) {
            popped = slots_[head_];
            head_ = (head_ + 1) & mask_;
            --count_;
        } else {
            // trigger 0 and empty ring: write-through
            wrote_ = true;
            return din;
        }
    }
    slots_[tail_] = din ? 1 : 0;
    tail_ = (tail_ + 1) & mask_;
    ++count_;
    wrote_ = true;
    if (count_ > slots_.size())
        throw std::logic_error("LineFifo: occupancy exceeded capacity");
    return popped != 0;
}

bool LineFifo::step(bool din) {
    if (delay_ == 0) {
        wrote_ = true;
        return din;
    }
    if (delay_ == 1) {
        const bool out = out_stage_[0] != 0;
        out_stage_[0] = din ? 1 : 0;
        wrote_ = true;
        return out;
    }
    const bool out = out_stage_[1] != 0;
    out_stage_[1] = out_stage_[0];
    out_stage_[0] = push_pop(din) ? 1 : 0;
    return out;
}

void LineFifo::reset() {
    std::fill(slots_.begin(), slots_.end(), 0);
    head_ = tail_ = count_ = 0;
    reading_ = false;
    wrote_ = false;
    out_stage_[0] = out_stage_[1] = 0;
}

int window_sum(const WindowState& wmat) {
    int sum = 0;
    for (std::uint8_t b : wmat.bits) sum += b;
    return sum;
}

bool operator_output(int sum, int m) { return sum > m; }

namespace {
PipelineGeometry validated(PipelineGeometry g) {
    g.validate();
    return g;
}
}  // namespace

WindowPipeline::WindowPipeline(const PipelineGeometry& geom)
    : geom_(validated(geom)), wmat_(geom_.n) {
    const std::size_t delay = static_cast<std::size_t>(geom_.w - geom_.n);
    const std::size_t capacity = std::bit_ceil(std::max<std::size_t>(delay, 1));
    fifos_.reserve(geom_.n - 1);
    for (int i = 0; i < geom_.n - 1; ++i) fifos_.emplace_back(delay, capacity);
    leaving_.resize(geom_.n);
}

void WindowPipeline::reset() {
    std::fill(wmat_.bits.begin(), wmat_.bits.end(), 0);
    for (LineFifo& f : fifos_) f.reset();
    cursor_ = StreamCursor{};
    max_occupancy_ = 0;
}

bool WindowPipeline::geometric_valid() const {
    if (cursor_.cycles_seen == 0) return false;
    return cursor_.x >= geom_.n - 1 && cursor_.y >= geom_.n - 1;
}

std::optional<OutputSample> WindowPipeline::step(bool input, bool valid) {
    if (!valid) return std::nullopt;

    const int n = geom_.n;

    // Bits exiting each row's register chain this clock.
    for (int r = 0; r < n; ++r) leaving_[r] = wmat_.at(r, n - 1);

    // FIFO r carries row r's exit to row r+1's entry.
    for (int r = 0; r < n - 1; ++r) {
        const bool dout = fifos_[r].step(leaving_[r] != 0);
        leaving_[r] = dout ? 1 : 0;  // reuse as next-row input
        max_occupancy_ = std::max(max_occupancy_, fifos_[r].occupancy());
    }

    // Shift every row right by one and load column 0.
    for (int r = 0; r < n; ++r) {
        std::uint8_t* row = wmat_.bits.data() + static_cast<std::size_t>(r) * n;
        std::memmove(row + 1, row, static_cast<std::size_t>(n - 1));
        row[0] = (r == 0) ? (input ? 1 : 0) : leaving_[r - 1];
    }

    // Raster position of this input.
    const std::uint64_t idx = cursor_.cycles_seen++;
    cursor_.x = static_cast<int>(idx % geom_.w);
    cursor_.y = static_cast<int>((idx / geom_.w) % geom_.h);

    if (!geometric_valid()) return std::nullopt;

    OutputSample out;
    out.value = operator_output(window_sum(), geom_.m);
    out.row = cursor_.y - geom_.border();
    out.col = cursor_.x - geom_.border();
    return out;
}

BitFrame WindowPipeline::run_frame(const BitFrame& frame) {
    if (frame.w != geom_.w || frame.h != geom_.h)
        throw DimensionMismatch("run_frame: frame is " + std::to_string(frame.w) + "x" +
                                std::to_string(frame.h) + ", pipeline expects " +
                                std::to_string(geom_.w) + "x" + std::to_string(geom_.h));
    reset();
    BitFrame out(frame.w, frame.h);
    for (int y = 0; y < frame.h; ++y) {
        for (int x = 0; x < frame.w; ++x) {
            if (auto sample = step(frame.at(x, y) != 0, true))
                out.set(sample->col, sample->row, sample->value ? 1 : 0);
        }
    }
    return out;
}

TraceWriter::TraceWriter(std::ostream& os, const WindowPipeline& pipeline) : os_(os) {
    os_ << "cycle,input,valid";
    for (std::size_t i = 0; i < pipeline.fifo_count(); ++i) os_ << ",fifo" << i << "_occupancy";
    os_ << ",window_sum,output,geometric_valid,paper_valid48\n";
}

void TraceWriter::row(std::uint64_t cycle, bool input, bool valid,
                      const WindowPipeline& pipeline, const std::optional<OutputSample>& out) {
    os_ << cycle << ',' << (input ? 1 : 0) << ',' << (valid ? 1 : 0);
    for (std::size_t i = 0; i < pipeline.fifo_count(); ++i)
        os_ << ',' << pipeline.fifo(i).occupancy();
    os_ << ',' << pipeline.window_sum() << ',' << (out && out->value ? 1 : 0) << ','
        << (out ? 1 : 0) << ',' << (pipeline.paper_valid48() ? 1 : 0) << '\n';
}

}  // namespace skinseg
