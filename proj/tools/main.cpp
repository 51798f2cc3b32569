#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skinseg/cli.hpp"
#include "skinseg/errors.hpp"

namespace {

struct Flags {
    std::optional<int> width, height, window, majority, t_lo, t_hi;
    std::optional<std::string> mode;
    std::optional<std::string> trace;
    std::string input, output, stats, config;
    std::optional<std::string> inject_fault;
};

void add_common_flags(CLI::App* cmd, Flags& f, bool with_mode) {
    cmd->add_option("--input", f.input, "Input image (.ppm/.pgm/.pbm) or .cambytes stream");
    cmd->add_option("--output", f.output, "Output mask path (PBM, P4)");
    cmd->add_option("--width", f.width, "Frame width in pixels");
    cmd->add_option("--height", f.height, "Frame height in lines");
    cmd->add_option("--window", f.window, "Window size (odd)");
    cmd->add_option("--majority", f.majority, "Majority threshold (output 1 iff sum > this)");
    cmd->add_option("--t-lo", f.t_lo, "Lower U threshold, 8-bit scale");
    cmd->add_option("--t-hi", f.t_hi, "Upper U threshold, 8-bit scale");
    cmd->add_option("--trace", f.trace, "Per-cycle signal trace CSV path (cycle mode)");
    cmd->add_option("--stats", f.stats, "Write run stats JSON here instead of stdout");
    cmd->add_option("--config", f.config, "key=value config file (flags override it)");
    if (with_mode)
        cmd->add_option("--mode", f.mode, "behavioral | cycle | verify")
            ->check(CLI::IsMember({"behavioral", "cycle", "verify"}));
    cmd->add_option("--inject-fault", f.inject_fault)->group("");  // test hook, hidden
}

skinseg::RunConfig build_config(const Flags& f) {
    skinseg::RunConfig cfg;  // defaults
    if (!f.config.empty())
        for (const auto& [key, value] : skinseg::parse_config_file(f.config))
            skinseg::apply_config_entry(cfg, key, value);

    // flags override the config file
    if (f.width) cfg.geometry.w = *f.width;
    if (f.height) cfg.geometry.h = *f.height;
    if (f.window) cfg.geometry.n = *f.window;
    if (f.majority) cfg.geometry.m = *f.majority;
    if (f.t_lo) cfg.thresholds.t_lo = *f.t_lo;
    if (f.t_hi) cfg.thresholds.t_hi = *f.t_hi;
    if (f.mode) cfg.mode = skinseg::parse_mode(*f.mode);
    if (f.trace) cfg.trace_path = *f.trace;
    cfg.input = f.input;
    cfg.output = f.output;
    cfg.stats_path = f.stats;

    if (f.inject_fault) {
        const auto comma = f.inject_fault->find(',');
        if (comma == std::string::npos)
            throw skinseg::UsageError("--inject-fault expects x,y");
        try {
            cfg.inject_fault = {std::stoi(f.inject_fault->substr(0, comma)),
                                std::stoi(f.inject_fault->substr(comma + 1))};
        } catch (const std::exception&) {
            throw skinseg::UsageError("--inject-fault expects x,y");
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Skin segmentation pipeline: camera stream simulator, behavioral "
                 "golden model and cycle-accurate hardware emulation"};
    app.require_subcommand(1);

    Flags seg_flags, ver_flags, cam_flags;
    CLI::App* seg = app.add_subcommand("segment", "Segment one frame into a skin mask");
    add_common_flags(seg, seg_flags, true);
    CLI::App* ver = app.add_subcommand(
        "verify", "Run behavioral and cycle modes, compare masks bit-exactly");
    add_common_flags(ver, ver_flags, false);
    CLI::App* cam = app.add_subcommand("camsim", "Serialize a PPM image as a camera byte stream");
    cam->add_option("--input", cam_flags.input, "Input image (PPM, P6)");
    cam->add_option("--output", cam_flags.output, "Output .cambytes path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (seg->parsed()) return skinseg::cmd_segment(build_config(seg_flags));
        if (ver->parsed()) {
            skinseg::RunConfig cfg = build_config(ver_flags);
            cfg.mode = skinseg::RunMode::verify;
            return skinseg::cmd_verify(cfg);
        }
        if (cam->parsed()) return skinseg::cmd_camsim(build_config(cam_flags));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return skinseg::exit_code_for(e);
    }
    return 0;
}
