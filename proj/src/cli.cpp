#include "skinseg/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "skinseg/camera_model.hpp"
#include "skinseg/frame_buffer.hpp"
#include "skinseg/golden_reference.hpp"
#include "skinseg/pnm_io.hpp"

namespace skinseg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: key '" + key + "' has non-integer value '" + value + "'");
    }
}

}  // namespace

RunMode parse_mode(const std::string& s) {
    if (s == "behavioral") return RunMode::behavioral;
    if (s == "cycle") return RunMode::cycle;
    if (s == "verify") return RunMode::verify;
    throw UsageError("unknown mode '" + s + "' (behavioral|cycle|verify)");
}

void RunConfig::validate() const {
    geometry.validate();
    thresholds.validate();
    if (input.empty()) throw UsageError("--input is required");
    if (!trace_path.empty() && mode == RunMode::behavioral)
        throw UsageError("--trace requires cycle or verify mode");
    if (!trace_path.empty() && (trace_path == output || trace_path == stats_path))
        throw UsageError("--trace path collides with another output path");
}

std::string RunStats::to_json() const {
    nlohmann::ordered_json j;
    j["frames"] = frames;
    j["cycles"] = cycles;
    j["valid_outputs"] = valid_outputs;
    j["first_valid_cycle"] = first_valid_cycle;
    j["max_fifo_occupancy"] = max_fifo_occupancy;
    j["wall_time"] = wall_time;
    return j.dump();
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config: line " + std::to_string(lineno) + " is not key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "width") cfg.geometry.w = parse_int(key, value);
    else if (key == "height") cfg.geometry.h = parse_int(key, value);
    else if (key == "window") cfg.geometry.n = parse_int(key, value);
    else if (key == "majority") cfg.geometry.m = parse_int(key, value);
    else if (key == "t_lo") cfg.thresholds.t_lo = parse_int(key, value);
    else if (key == "t_hi") cfg.thresholds.t_hi = parse_int(key, value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "trace") cfg.trace_path = value;
    else throw UsageError("config: unknown key '" + key + "'");
}

BitFrame run_cycle_mode(const BitFrame& bits, const PipelineGeometry& geom,
                        std::ostream* trace_os, RunStats* stats) {
    if (bits.w != geom.w || bits.h != geom.h)
        throw DimensionMismatch("cycle mode: frame does not match geometry");

    BitFrameBuffer buf;

    // Write port: thresholded bits land in the frame buffer in raster order.
    for (int y = 0; y < geom.h; ++y) {
        for (int x = 0; x < geom.w; ++x) {
            buf.write(addr_of(x, y, geom.w), bits.at(x, y) != 0, true);
            buf.step();
        }
    }

    // Read port: the stored frame drives the window pipeline one bit per cycle.
    WindowPipeline pipe(geom);
    std::optional<TraceWriter> trace;
    if (trace_os) trace.emplace(*trace_os, pipe);

    BitFrame out(geom.w, geom.h);
    std::uint64_t cycle = 0;
    std::uint64_t valid_outputs = 0;
    std::uint64_t first_valid = 0;
    for (int y = 0; y < geom.h; ++y) {
        for (int x = 0; x < geom.w; ++x) {
            buf.read_request(addr_of(x, y, geom.w));
            buf.step();
            const bool bit = buf.read_data();
            const auto sample = pipe.step(bit, true);
            if (trace) trace->row(cycle, bit, true, pipe, sample);
            if (sample) {
                out.set(sample->col, sample->row, sample->value ? 1 : 0);
                if (valid_outputs == 0) first_valid = cycle;
                ++valid_outputs;
            }
            ++cycle;
        }
    }

    if (stats) {
        stats->frames += 1;
        stats->cycles += cycle;
        stats->valid_outputs += valid_outputs;
        stats->first_valid_cycle = first_valid;
        stats->max_fifo_occupancy = std::max(stats->max_fifo_occupancy,
                                             static_cast<std::uint64_t>(pipe.max_fifo_occupancy()));
    }
    return out;
}

namespace {

// Input is either a color image (P6 or .cambytes, still to be thresholded)
// or an already-binary frame (P4/P5) that skips the color stage.
struct LoadedInput {
    std::optional<Rgb444Image> image;
    std::optional<BitFrame> bits;
};

LoadedInput load_input(const RunConfig& cfg) {
    if (has_suffix(cfg.input, ".cambytes")) {
        std::ifstream f(cfg.input, std::ios::binary);
        if (!f) throw IoError("cannot open for reading: " + cfg.input);
        const auto records = read_cambytes(f);
        if (records.empty()) throw IoError("empty camera stream: " + cfg.input);
        StreamTiming timing;
        timing.w = cfg.geometry.w;
        timing.h = cfg.geometry.h;
        const auto samples = assemble_pixels(records, timing);
        int max_frame = 0;
        for (const auto& s : samples) max_frame = std::max(max_frame, s.frame);
        if (max_frame != 0)
            throw UnsupportedFormat("segment: stream holds " + std::to_string(max_frame + 1) +
                                    " frames; expected exactly one");
        return {samples_to_image(samples, timing, 0), std::nullopt};
    }

    std::ifstream f(cfg.input, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + cfg.input);
    const PnmKind kind = sniff_pnm(f);
    if (kind == PnmKind::PPM) {
        Rgb444Image img = read_ppm(f);
        if (img.w != cfg.geometry.w || img.h != cfg.geometry.h)
            throw DimensionMismatch("segment: image is " + std::to_string(img.w) + "x" +
                                    std::to_string(img.h) + ", geometry expects " +
                                    std::to_string(cfg.geometry.w) + "x" +
                                    std::to_string(cfg.geometry.h));
        return {std::move(img), std::nullopt};
    }
    BitFrame bits = (kind == PnmKind::PBM) ? read_pbm(f) : read_pgm_as_bits(f);
    if (bits.w != cfg.geometry.w || bits.h != cfg.geometry.h)
        throw DimensionMismatch("segment: binary input does not match geometry");
    return {std::nullopt, std::move(bits)};
}

void emit_stats(const RunConfig& cfg, const RunStats& stats) {
    const std::string line = stats.to_json() + "\n";
    if (cfg.stats_path.empty()) {
        std::cout << line;
    } else {
        std::ofstream f(cfg.stats_path);
        if (!f) throw IoError("cannot open for writing: " + cfg.stats_path);
        f << line;
    }
}

// Full behavioral path, timed as one unit (color stage included when the
// input was a color image).
BitFrame segment_behavioral(const LoadedInput& in, const RunConfig& cfg, RunStats* stats) {
    const auto t0 = Clock::now();
    BitFrame mask = in.image ? reference_pipeline(*in.image, cfg.thresholds, cfg.geometry)
                             : majority_erode(*in.bits, cfg.geometry.n, cfg.geometry.m);
    if (stats) {
        stats->frames += 1;
        stats->valid_outputs += static_cast<std::uint64_t>(cfg.geometry.w - cfg.geometry.n + 1) *
                                static_cast<std::uint64_t>(cfg.geometry.h - cfg.geometry.n + 1);
        stats->wall_time += seconds_since(t0);
    }
    return mask;
}

BitFrame threshold_stage(const LoadedInput& in, const RunConfig& cfg) {
    return in.image ? threshold_frame(*in.image, cfg.thresholds) : *in.bits;
}

BitFrame segment_cycle(const LoadedInput& in, const RunConfig& cfg, RunStats* stats) {
    std::ofstream trace_file;
    std::ostream* trace_os = nullptr;
    if (!cfg.trace_path.empty()) {
        trace_file.open(cfg.trace_path);
        if (!trace_file) throw IoError("cannot open for writing: " + cfg.trace_path);
        trace_os = &trace_file;
    }
    const auto t0 = Clock::now();
    const BitFrame bits = threshold_stage(in, cfg);
    BitFrame mask = run_cycle_mode(bits, cfg.geometry, trace_os, stats);
    if (stats) stats->wall_time += seconds_since(t0);
    if (cfg.inject_fault) {
        const auto [fx, fy] = *cfg.inject_fault;
        if (fx < 0 || fx >= mask.w || fy < 0 || fy >= mask.h)
            throw UsageError("--inject-fault coordinate outside the frame");
        mask.set(fx, fy, mask.at(fx, fy) ? 0 : 1);
    }
    return mask;
}

void compare_masks(const BitFrame& behavioral, const BitFrame& cycle) {
    if (behavioral == cycle) return;
    std::size_t differing = 0;
    int first_x = -1, first_y = -1;
    for (int y = 0; y < behavioral.h; ++y) {
        for (int x = 0; x < behavioral.w; ++x) {
            if (behavioral.at(x, y) != cycle.at(x, y)) {
                if (differing == 0) {
                    first_x = x;
                    first_y = y;
                }
                ++differing;
            }
        }
    }
    throw MismatchError("verify: masks differ at " + std::to_string(differing) +
                        " of " + std::to_string(behavioral.bits.size()) +
                        " pixels; first at (x=" + std::to_string(first_x) +
                        ",y=" + std::to_string(first_y) + "), behavioral=" +
                        std::to_string(behavioral.at(first_x, first_y)) + " cycle=" +
                        std::to_string(cycle.at(first_x, first_y)));
}

}  // namespace

int cmd_segment(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.mode == RunMode::verify) return cmd_verify(cfg);
    if (cfg.output.empty()) throw UsageError("--output is required");

    const LoadedInput in = load_input(cfg);
    RunStats stats;
    const BitFrame mask = (cfg.mode == RunMode::behavioral)
                              ? segment_behavioral(in, cfg, &stats)
                              : segment_cycle(in, cfg, &stats);
    write_pbm_file(cfg.output, mask);
    emit_stats(cfg, stats);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    const LoadedInput in = load_input(cfg);

    RunStats stats;
    const auto t0 = Clock::now();
    const BitFrame bits = threshold_stage(in, cfg);
    const BitFrame behavioral = majority_erode(bits, cfg.geometry.n, cfg.geometry.m);
    const BitFrame cycle = segment_cycle(in, cfg, &stats);
    stats.wall_time = seconds_since(t0);

    compare_masks(behavioral, cycle);

    if (!cfg.output.empty()) write_pbm_file(cfg.output, cycle);
    emit_stats(cfg, stats);
    return 0;
}

int cmd_camsim(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("--input is required");
    if (cfg.output.empty()) throw UsageError("--output is required");

    const Rgb444Image img = read_ppm_file(cfg.input);

    StreamTiming timing;
    timing.w = img.w;
    timing.h = img.h;

    CameraRegisterFile regs;
    regs.write_register(CameraRegisterFile::kFormatRegister, CameraRegisterFile::kRgb444Code);

    const auto stream = emit_frame(img, timing, regs);
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + cfg.output);
    write_cambytes(f, stream);
    return 0;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 2;
    if (dynamic_cast<const MismatchError*>(&e)) return 5;
    if (dynamic_cast<const BadGeometry*>(&e)) return 4;
    if (dynamic_cast<const DimensionMismatch*>(&e)) return 4;
    if (dynamic_cast<const FrameGeometryError*>(&e)) return 4;
    if (dynamic_cast<const OutOfRange*>(&e)) return 4;
    if (dynamic_cast<const IoError*>(&e)) return 3;
    if (dynamic_cast<const PhaseError*>(&e)) return 3;
    if (dynamic_cast<const UnsupportedFormat*>(&e)) return 3;
    return 1;
}

}  // namespace skinseg
