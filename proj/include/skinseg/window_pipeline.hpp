#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "skinseg/bit_frame.hpp"
#include "skinseg/errors.hpp"

namespace skinseg {

// Frame size, window size and majority threshold. Defaults reproduce the
// 640x480 / 7x7 / sum>37 configuration.
struct PipelineGeometry {
    int w = 640;
    int h = 480;
    int n = 7;
    int m = 37;

    int border() const { return (n - 1) / 2; }
    void validate() const;
};

// Single-bit row buffer with an occupancy counter and registered output.
// Realizes an exact `delay`-cycle enqueue-to-dequeue delay: the ring holds
// delay-2 entries once streaming and the remaining 2 cycles come from the
// output register stage, so data_count plateaus at delay-2 (631 for the
// 640/7 defaults) while the read-enable trigger fires at that same count.
class LineFifo {
public:
    LineFifo(std::size_t delay, std::size_t capacity);

    // One clock with write data din; returns the delayed read data.
    bool step(bool din);
    void reset();

    std::size_t occupancy() const { return count_; }   // data_count
    std::size_t capacity() const { return slots_.size(); }
    std::size_t delay() const { return delay_; }
    bool rd_en() const { return reading_; }
    bool wr_en() const { return wrote_; }

private:
    bool push_pop(bool din);

    std::vector<std::uint8_t> slots_;  // ring, power-of-two size
    std::size_t mask_;
    std::size_t head_ = 0;  // next pop
    std::size_t tail_ = 0;  // next push
    std::size_t count_ = 0;
    std::size_t delay_;
    std::size_t trigger_;   // occupancy at which rd_en asserts (delay-2)
    bool reading_ = false;
    bool wrote_ = false;
    std::uint8_t out_stage_[2] = {0, 0};  // 2-cycle registered read path
};

// The n x n bit matrix exposed by the window generator. Row 0 holds the
// newest line, column 0 the newest pixel: once primed, at(r, c) is the
// input bit that arrived r*w + c cycles ago.
struct WindowState {
    int n = 0;
    std::vector<std::uint8_t> bits;  // row-major

    explicit WindowState(int size) : n(size), bits(static_cast<std::size_t>(size) * size, 0) {}
    std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * n + c]; }
};

// Raster position of the most recent valid input.
struct StreamCursor {
    int x = 0;
    int y = 0;
    std::uint64_t cycles_seen = 0;
};

int window_sum(const WindowState& wmat);
bool operator_output(int sum, int m);

// Emitted output bit and the frame coordinate it belongs to (window center).
struct OutputSample {
    bool value = false;
    int row = 0;
    int col = 0;
};

// Cycle-accurate window generator + operator: n rows of shift registers
// chained through n-1 line FIFOs, stepped one input bit per valid cycle.
class WindowPipeline {
public:
    explicit WindowPipeline(const PipelineGeometry& geom);

    // Advances one clock. With valid=1 the input enters the register/FIFO
    // structure in raster order; an output sample is returned iff the
    // window lies fully inside the frame. With valid=0 nothing changes.
    std::optional<OutputSample> step(bool input, bool valid);

    // Resets, streams a whole frame back-to-back and collects the output
    // mask; pixels whose window leaves the frame are 0.
    BitFrame run_frame(const BitFrame& frame);

    void reset();

    const PipelineGeometry& geometry() const { return geom_; }
    const WindowState& window() const { return wmat_; }
    const StreamCursor& cursor() const { return cursor_; }

    std::size_t fifo_count() const { return fifos_.size(); }
    const LineFifo& fifo(std::size_t i) const { return fifos_[i]; }
    std::size_t max_fifo_occupancy() const { return max_occupancy_; }

    int window_sum() const { return skinseg::window_sum(wmat_); }

    // True iff the window currently covers a full n x n block of the frame;
    // this is the predicate that gates output emission.
    bool geometric_valid() const;

    // The original design's data-valid: asserts once more pixels than one
    // full window have been consumed. Trace-only; never gates outputs.
    bool paper_valid48() const { return cursor_.cycles_seen > 48; }

private:
    PipelineGeometry geom_;
    WindowState wmat_;
    std::vector<LineFifo> fifos_;
    StreamCursor cursor_;
    std::size_t max_occupancy_ = 0;
    std::vector<std::uint8_t> leaving_;   // per-row bits exiting the register chain
};

inline WindowPipeline make_pipeline(const PipelineGeometry& geom) { return WindowPipeline(geom); }

// Streams the per-cycle signal trace as CSV: cycle index, input bit, valid,
// one occupancy column per FIFO, window sum, output bit, geometric valid,
// paper_valid48. Header row first.
class TraceWriter {
public:
    TraceWriter(std::ostream& os, const WindowPipeline& pipeline);

    void row(std::uint64_t cycle, bool input, bool valid, const WindowPipeline& pipeline,
             const std::optional<OutputSample>& out);

private:
    std::ostream& os_;
};

}  // namespace skinseg
