#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "skinseg/bit_frame.hpp"
#include "skinseg/color_space.hpp"
#include "skinseg/window_pipeline.hpp"

namespace skinseg {

enum class RunMode { behavioral, cycle, verify };

RunMode parse_mode(const std::string& s);

struct RunConfig {
    PipelineGeometry geometry;
    ThresholdConfig thresholds;
    RunMode mode = RunMode::behavioral;
    std::string input;
    std::string output;
    std::string trace_path;
    std::string stats_path;
    // test hook: flip one bit of the cycle-mode mask to provoke a mismatch
    std::optional<std::pair<int, int>> inject_fault;

    void validate() const;
};

struct RunStats {
    std::uint64_t frames = 0;
    std::uint64_t cycles = 0;
    std::uint64_t valid_outputs = 0;
    std::uint64_t first_valid_cycle = 0;
    std::uint64_t max_fifo_occupancy = 0;
    double wall_time = 0.0;

    std::string to_json() const;  // single line, no trailing newline
};

// Flat key=value config file; '#' starts a comment. Recognized keys:
// width, height, window, majority, t_lo, t_hi, mode, trace.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one config entry; throws UsageError on unknown keys or bad values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// Streams a thresholded frame through the dual-port frame buffer into the
// cycle-accurate window pipeline; optionally writes the signal trace.
BitFrame run_cycle_mode(const BitFrame& bits, const PipelineGeometry& geom,
                        std::ostream* trace_os, RunStats* stats);

// Subcommands. All return 0 on success and throw on failure; exit_code_for
// maps exception classes onto the fixed exit taxonomy:
// 0 ok, 2 usage, 3 I/O or corrupt stream, 4 geometry, 5 verification mismatch.
int cmd_segment(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_camsim(const RunConfig& cfg);

int exit_code_for(const std::exception& e);

}  // namespace skinseg
