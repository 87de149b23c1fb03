#ifndef PFTRACK_SYNTHETIC_HPP_
#define PFTRACK_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "pftrack/sequence.hpp"

namespace pftrack {

/// Deterministic synthetic sequence: a textured target over a noisy
/// background with optional occlusion, illumination and distractor events.
struct SynthSpec {
    int frame_count = 100;
    int width = 320;
    int height = 240;

    int target_w = 40;
    int target_h = 48;
    std::array<std::uint8_t, 3> target_color{210, 140, 110};
    std::array<std::uint8_t, 3> target_stripe{120, 60, 40};

    enum class Motion { Linear, Sinusoidal };
    Motion motion = Motion::Linear;
    double speed_px = 2.0;        // horizontal displacement per frame
    double sine_amplitude = 25.0; // vertical swing for sinusoidal motion

    int occlusion_start = -1; // [start, end), -1 disables
    int occlusion_end = -1;
    // The occluder is a static block striped vertically in the target's own
    // two colors: a color histogram confuses it with the target while the
    // edge orientation histogram tells them apart.
    std::array<std::uint8_t, 3> occluder_color{210, 140, 110};
    double occluder_coverage = 0.6; // fraction of the target width covered

    int illumination_start = -1;
    int illumination_end = -1;
    double illumination_gain = 1.6; // value-channel gain, clamped at 255

    bool distractor = false; // same-color plain patch elsewhere in the scene

    std::array<std::uint8_t, 3> background{40, 90, 50};
    std::uint64_t seed = 0;
};

/// Exact target rectangle at a given frame.
RegionRect synth_target_rect(const SynthSpec& spec, int frame);

/// Renders one frame; deterministic in (spec, frame).
ImageBuffer render_synth_frame(const SynthSpec& spec, int frame);

/// Writes PPM frames under out_dir/img plus groundtruth_rect.txt.
TrackSequence generate_synthetic(const SynthSpec& spec, const std::string& out_dir);

} // namespace pftrack

#endif
