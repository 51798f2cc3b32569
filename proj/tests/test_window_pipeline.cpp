#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "skinseg/golden_reference.hpp"
#include "skinseg/window_pipeline.hpp"

using namespace skinseg;

namespace {

BitFrame random_frame(int w, int h, double density, std::mt19937& rng) {
    BitFrame f(w, h);
    std::bernoulli_distribution bit(density);
    for (auto& b : f.bits) b = bit(rng) ? 1 : 0;
    return f;
}

}  // namespace

TEST_CASE("pipeline allocation matches the 640/7 design") {
    WindowPipeline pipe(PipelineGeometry{});
    CHECK(pipe.fifo_count() == 6);
    for (std::size_t i = 0; i < pipe.fifo_count(); ++i) {
        CHECK(pipe.fifo(i).capacity() == 1024);
        CHECK(pipe.fifo(i).delay() == 633);
    }
}

TEST_CASE("fifo capacity is the next power of two above w-n") {
    WindowPipeline pipe(PipelineGeometry{8, 8, 3, 4});
    CHECK(pipe.fifo_count() == 2);
    CHECK(pipe.fifo(0).capacity() == 8);  // >= 8-3 = 5
    CHECK(pipe.fifo(0).delay() == 5);
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(WindowPipeline(PipelineGeometry{8, 8, 4, 4}), BadGeometry);   // even n
    CHECK_THROWS_AS(WindowPipeline(PipelineGeometry{8, 8, 9, 4}), BadGeometry);   // n > min
    CHECK_THROWS_AS(WindowPipeline(PipelineGeometry{8, 8, 3, 9}), BadGeometry);   // m >= n^2
    CHECK_THROWS_AS(WindowPipeline(PipelineGeometry{8, 8, 3, -1}), BadGeometry);
    CHECK_THROWS_AS(WindowPipeline(PipelineGeometry{8, 8, 1, 0}), BadGeometry);   // n < 3
    CHECK_NOTHROW(WindowPipeline(PipelineGeometry{8, 8, 3, 8}));
}

TEST_CASE("window_sum counts set bits") {
    WindowState w(7);
    CHECK(window_sum(w) == 0);
    std::fill(w.bits.begin(), w.bits.end(), 1);
    CHECK(window_sum(w) == 49);

    std::mt19937 rng(3);
    std::fill(w.bits.begin(), w.bits.end(), 0);
    int expected = 0;
    for (auto& b : w.bits) {
        b = rng() & 1;
        expected += b;
    }
    CHECK(window_sum(w) == expected);
}

TEST_CASE("operator output is a strict majority comparison") {
    CHECK(operator_output(49, 37));
    CHECK_FALSE(operator_output(37, 37));
    CHECK(operator_output(38, 37));
    CHECK_FALSE(operator_output(0, 37));
}

TEST_CASE("first output sample lands at input index (n-1)w + (n-1)") {
    PipelineGeometry geom;  // 640x480, 7, 37
    WindowPipeline pipe(geom);
    std::uint64_t idx = 0;
    for (; idx < 10000; ++idx) {
        const auto sample = pipe.step(true, true);
        if (sample) {
            CHECK(idx == 6u * 640 + 6);
            CHECK(sample->value);  // all-ones window: 49 > 37
            CHECK(sample->row == 3);
            CHECK(sample->col == 3);
            break;
        }
    }
    CHECK(idx == 3846);
}

TEST_CASE("steady-state fifo occupancy is w-n-2") {
    PipelineGeometry geom;
    WindowPipeline pipe(geom);
    for (int i = 0; i < 5 * 640; ++i) pipe.step(false, true);
    for (std::size_t f = 0; f < pipe.fifo_count(); ++f) {
        CHECK(pipe.fifo(f).occupancy() == 631);
        CHECK(pipe.fifo(f).rd_en());
    }
    CHECK(pipe.max_fifo_occupancy() == 631);

    WindowPipeline small(PipelineGeometry{24, 16, 5, 12});
    for (int i = 0; i < 8 * 24; ++i) small.step(false, true);
    for (std::size_t f = 0; f < small.fifo_count(); ++f)
        CHECK(small.fifo(f).occupancy() == 24 - 5 - 2);
}

TEST_CASE("impulse traverses the window along the delay law") {
    // wmat[r][c] must equal the input from r*w + c cycles ago
    const PipelineGeometry geom{11, 9, 3, 4};
    WindowPipeline pipe(geom);
    const std::uint64_t impulse_at = 13;
    const std::uint64_t total = static_cast<std::uint64_t>(geom.w) * geom.h;
    for (std::uint64_t t = 0; t < total; ++t) {
        pipe.step(t == impulse_at, true);
        for (int r = 0; r < geom.n; ++r) {
            for (int c = 0; c < geom.n; ++c) {
                const bool expect =
                    (t == impulse_at + static_cast<std::uint64_t>(r) * geom.w + c);
                CHECK(pipe.window().at(r, c) == (expect ? 1 : 0));
            }
        }
    }
}

TEST_CASE("impulse delay law holds at full VGA width") {
    const PipelineGeometry geom;
    WindowPipeline pipe(geom);
    const std::uint64_t impulse_at = 12345;
    const std::uint64_t last_visit = impulse_at + 6u * 640 + 6;
    for (std::uint64_t t = 0; t <= last_visit; ++t) {
        pipe.step(t == impulse_at, true);
        int sum = 0;
        for (int r = 0; r < geom.n; ++r)
            for (int c = 0; c < geom.n; ++c)
                if (pipe.window().at(r, c)) {
                    ++sum;
                    CHECK(t == impulse_at + static_cast<std::uint64_t>(r) * 640 + c);
                }
        const bool visiting =
            t >= impulse_at && (t - impulse_at) % 640 <= 6 && (t - impulse_at) / 640 <= 6;
        CHECK(sum == (visiting ? 1 : 0));
    }
}

TEST_CASE("a stalled cycle changes nothing") {
    PipelineGeometry geom{16, 12, 3, 4};
    WindowPipeline pipe(geom);
    std::mt19937 rng(7);
    for (int i = 0; i < 40; ++i) pipe.step(rng() & 1, true);

    const auto wmat_before = pipe.window().bits;
    const auto occ_before = pipe.fifo(0).occupancy();
    const auto seen_before = pipe.cursor().cycles_seen;
    CHECK_FALSE(pipe.step(true, false).has_value());
    CHECK(pipe.window().bits == wmat_before);
    CHECK(pipe.fifo(0).occupancy() == occ_before);
    CHECK(pipe.cursor().cycles_seen == seen_before);
}

TEST_CASE("stall insertion leaves the output sequence unchanged") {
    std::mt19937 rng(11);
    const PipelineGeometry geom{20, 14, 5, 18};
    const BitFrame frame = random_frame(geom.w, geom.h, 0.7, rng);

    WindowPipeline reference(geom);
    const BitFrame expected = reference.run_frame(frame);

    WindowPipeline stalled(geom);
    stalled.reset();
    BitFrame got(geom.w, geom.h);
    std::uniform_int_distribution<int> extra(0, 2);
    for (int y = 0; y < geom.h; ++y)
        for (int x = 0; x < geom.w; ++x) {
            for (int k = extra(rng); k > 0; --k) stalled.step(rng() & 1, false);
            if (auto s = stalled.step(frame.at(x, y) != 0, true))
                got.set(s->col, s->row, s->value ? 1 : 0);
        }
    CHECK(got == expected);
}

TEST_CASE("run_frame equals the brute-force oracle") {
    std::mt19937 rng(13);
    for (int n : {3, 5, 7}) {
        const PipelineGeometry geom{32, 24, n, n * n * 3 / 4};
        WindowPipeline pipe(geom);
        for (int trial = 0; trial < 25; ++trial) {
            const BitFrame frame =
                random_frame(geom.w, geom.h, 0.5 + 0.4 * (trial % 5) / 5.0, rng);
            CHECK(pipe.run_frame(frame) == majority_erode(frame, geom.n, geom.m));
        }
    }
}

TEST_CASE("run_frame matches the oracle when the window spans the full width") {
    // w == n: the line FIFOs degenerate to zero delay
    std::mt19937 rng(17);
    const PipelineGeometry geom{7, 9, 7, 24};
    WindowPipeline pipe(geom);
    for (int trial = 0; trial < 20; ++trial) {
        const BitFrame frame = random_frame(geom.w, geom.h, 0.6, rng);
        CHECK(pipe.run_frame(frame) == majority_erode(frame, geom.n, geom.m));
    }
    // w == n+1: single-register FIFO path
    const PipelineGeometry tight{8, 9, 7, 24};
    WindowPipeline pipe2(tight);
    for (int trial = 0; trial < 20; ++trial) {
        const BitFrame frame = random_frame(tight.w, tight.h, 0.6, rng);
        CHECK(pipe2.run_frame(frame) == majority_erode(frame, tight.n, tight.m));
    }
}

TEST_CASE("all-one frame erodes to a zero border") {
    const PipelineGeometry geom{64, 48, 7, 37};
    WindowPipeline pipe(geom);
    BitFrame ones(64, 48);
    std::fill(ones.bits.begin(), ones.bits.end(), 1);
    const BitFrame out = pipe.run_frame(ones);
    for (int y = 0; y < 48; ++y)
        for (int x = 0; x < 64; ++x) {
            const bool interior = x >= 3 && x < 61 && y >= 3 && y < 45;
            CHECK(out.at(x, y) == (interior ? 1 : 0));
        }
}

TEST_CASE("flipping an input bit to one never clears an output bit") {
    std::mt19937 rng(19);
    const PipelineGeometry geom{24, 18, 5, 18};
    WindowPipeline pipe(geom);
    for (int trial = 0; trial < 50; ++trial) {
        BitFrame frame = random_frame(geom.w, geom.h, 0.72, rng);
        const BitFrame before = pipe.run_frame(frame);
        std::uniform_int_distribution<int> px(0, geom.w - 1), py(0, geom.h - 1);
        int x = px(rng), y = py(rng);
        frame.set(x, y, 1);
        const BitFrame after = pipe.run_frame(frame);
        for (std::size_t i = 0; i < before.bits.size(); ++i)
            CHECK(before.bits[i] <= after.bits[i]);
    }
}

TEST_CASE("run_frame validates dimensions and resets between frames") {
    const PipelineGeometry geom{16, 12, 3, 4};
    WindowPipeline pipe(geom);
    CHECK_THROWS_AS(pipe.run_frame(BitFrame(8, 12)), DimensionMismatch);

    std::mt19937 rng(23);
    const BitFrame frame = random_frame(16, 12, 0.6, rng);
    const BitFrame first = pipe.run_frame(frame);
    const BitFrame second = pipe.run_frame(frame);
    CHECK(first == second);
}

TEST_CASE("paper data-valid flag asserts after 48 consumed pixels") {
    WindowPipeline pipe(PipelineGeometry{64, 48, 7, 37});
    for (int i = 0; i < 48; ++i) {
        CHECK_FALSE(pipe.paper_valid48());
        pipe.step(false, true);
    }
    CHECK_FALSE(pipe.paper_valid48());  // cycles_seen == 48
    pipe.step(false, true);
    CHECK(pipe.paper_valid48());  // cycles_seen == 49
}

TEST_CASE("trace has the fixed column layout") {
    const PipelineGeometry geom{16, 12, 3, 4};
    WindowPipeline pipe(geom);
    std::ostringstream os;
    TraceWriter trace(os, pipe);
    std::uint64_t cycle = 0;
    BitFrame frame(16, 12);
    std::fill(frame.bits.begin(), frame.bits.end(), 1);
    pipe.reset();
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x) {
            const bool bit = frame.at(x, y) != 0;
            const auto s = pipe.step(bit, true);
            trace.row(cycle++, bit, true, pipe, s);
        }

    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "cycle,input,valid,fifo0_occupancy,fifo1_occupancy,window_sum,output,"
          "geometric_valid,paper_valid48");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 16u * 12);

    // first data row: cycle 0, input 1, valid 1, one push per fifo, sum 1, no output
    CHECK(os.str().substr(header.size() + 1, 18).starts_with("0,1,1,1,1,1,0,0,0"));
}
