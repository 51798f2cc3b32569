#include "skinseg/golden_reference.hpp"

#include <algorithm>
#include <string>

namespace skinseg {

BitFrame majority_erode(const BitFrame& frame, int n, int m) {
    if (n < 1 || n % 2 == 0)
        throw BadGeometry("majority_erode: window size " + std::to_string(n) + " must be odd");
    if (n > std::min(frame.w, frame.h))
        throw BadGeometry("majority_erode: window exceeds frame");
    if (m < 0 || m >= n * n)
        throw BadGeometry("majority_erode: threshold outside [0,n^2)");

    const int k = (n - 1) / 2;
    BitFrame out(frame.w, frame.h);
    for (int y = k; y < frame.h - k; ++y) {
        for (int x = k; x < frame.w - k; ++x) {
            int count = 0;
            for (int dy = -k; dy <= k; ++dy)
                for (int dx = -k; dx <= k; ++dx) count += frame.at(x + dx, y + dy);
            out.set(x, y, count > m ? 1 : 0);
        }
    }
    return out;
}

BitFrame reference_pipeline(const Rgb444Image& image, const ThresholdConfig& cfg,
                            const PipelineGeometry& geom) {
    geom.validate();
    if (image.w != geom.w || image.h != geom.h)
        throw DimensionMismatch("reference_pipeline: image is " + std::to_string(image.w) +
                                "x" + std::to_string(image.h) + ", geometry expects " +
                                std::to_string(geom.w) + "x" + std::to_string(geom.h));
    return majority_erode(threshold_frame(image, cfg), geom.n, geom.m);
}

}  // namespace skinseg
