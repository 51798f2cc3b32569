#pragma once

#include "skinseg/bit_frame.hpp"
#include "skinseg/color_space.hpp"
#include "skinseg/window_pipeline.hpp"

namespace skinseg {

// Behavioral windowed majority: out(y,x) = 1 iff the n x n window centered
// at (y,x) lies fully inside the frame and holds more than m ones. Border
// pixels are 0. Deliberately brute force; this is the ground truth the
// streaming pipeline is checked against.
BitFrame majority_erode(const BitFrame& frame, int n, int m);

// Whole-path behavioral model: per-pixel color conversion and threshold,
// then majority_erode.
BitFrame reference_pipeline(const Rgb444Image& image, const ThresholdConfig& cfg,
                            const PipelineGeometry& geom);

}  // namespace skinseg
