#include "pftrack/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace fs = std::filesystem;

namespace pftrack {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t tag)
{
    std::uint64_t z = seed + tag * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void fill_rect(ImageBuffer& img, const RegionRect& rect, std::array<std::uint8_t, 3> color)
{
    const auto clamped = clamp_region(rect, img.width, img.height);
    if (!clamped)
        return;
    for (int y = clamped->y; y < clamped->y + clamped->h; ++y)
        for (int x = clamped->x; x < clamped->x + clamped->w; ++x) {
            std::uint8_t* p = img.at(x, y);
            p[0] = color[0];
            p[1] = color[1];
            p[2] = color[2];
        }
}

bool in_interval(int frame, int start, int end)
{
    return start >= 0 && frame >= start && frame < end;
}

} // namespace

RegionRect synth_target_rect(const SynthSpec& spec, int frame)
{
    const double start_cx = spec.width * 0.25;
    const double base_cy = spec.height * 0.5;
    double cx = start_cx + spec.speed_px * frame;
    double cy = base_cy;
    if (spec.motion == SynthSpec::Motion::Sinusoidal)
        cy += spec.sine_amplitude * std::sin(2.0 * M_PI * frame / 60.0);
    return {static_cast<int>(std::lround(cx - spec.target_w / 2.0)),
            static_cast<int>(std::lround(cy - spec.target_h / 2.0)),
            spec.target_w, spec.target_h};
}

ImageBuffer render_synth_frame(const SynthSpec& spec, int frame)
{
    ImageBuffer img(spec.width, spec.height);

    std::mt19937_64 rng(mix(spec.seed, static_cast<std::uint64_t>(frame)));
    // Keep background jitter below the Sobel edge threshold so the background
    // stays edge-free and the edge feature remains discriminative.
    std::uniform_int_distribution<int> jitter(-2, 2);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            std::uint8_t* p = img.at(x, y);
            // Sparse diagonal texture lines keep the background from being
            // featureless: windows that drift off-target or oversize pick up
            // these foreign edge orientations and colors.
            const bool texture = (x + y) % 16 < 2;
            for (int c = 0; c < 3; ++c) {
                const int base = static_cast<int>(spec.background[c]) - (texture ? 25 : 0);
                p[c] = static_cast<std::uint8_t>(std::clamp(base + jitter(rng), 0, 255));
            }
        }

    if (spec.distractor) {
        const RegionRect patch{static_cast<int>(spec.width * 0.70),
                               static_cast<int>(spec.height * 0.15),
                               spec.target_w, spec.target_h};
        fill_rect(img, patch, spec.target_color);
    }

    // Striped target: strong interior edges so the edge histogram is distinctive.
    const RegionRect target = synth_target_rect(spec, frame);
    const auto clamped = clamp_region(target, spec.width, spec.height);
    if (clamped) {
        for (int y = clamped->y; y < clamped->y + clamped->h; ++y)
            for (int x = clamped->x; x < clamped->x + clamped->w; ++x) {
                const bool stripe = ((y - target.y) / 4) % 2 == 1;
                const auto& color = stripe ? spec.target_stripe : spec.target_color;
                std::uint8_t* p = img.at(x, y);
                p[0] = color[0];
                p[1] = color[1];
                p[2] = color[2];
            }
    }

    if (in_interval(frame, spec.occlusion_start, spec.occlusion_end)) {
        // Static occluder pinned where the target sits mid-interval, so the
        // target slides behind it and coverage ramps up and back down.
        const int mid = (spec.occlusion_start + spec.occlusion_end) / 2;
        const RegionRect at_mid = synth_target_rect(spec, mid);
        const int cover_w = static_cast<int>(std::lround(spec.target_w * spec.occluder_coverage));
        const RegionRect occluder{at_mid.x + (spec.target_w - cover_w) / 2, at_mid.y - 4,
                                  cover_w, spec.target_h + 8};
        const auto occ = clamp_region(occluder, spec.width, spec.height);
        if (occ) {
            // Vertical stripes in the target's own two colors: a color histogram
            // cannot tell the occluder from the target, edge orientations can.
            for (int y = occ->y; y < occ->y + occ->h; ++y)
                for (int x = occ->x; x < occ->x + occ->w; ++x) {
                    const bool stripe = ((x - occluder.x) / 4) % 2 == 1;
                    const auto& color = stripe ? spec.target_stripe : spec.occluder_color;
                    std::uint8_t* p = img.at(x, y);
                    p[0] = color[0];
                    p[1] = color[1];
                    p[2] = color[2];
                }
        }
    }

    if (in_interval(frame, spec.illumination_start, spec.illumination_end)) {
        for (auto& byte : img.pixels)
            byte = static_cast<std::uint8_t>(
                std::min(255L, std::lround(byte * spec.illumination_gain)));
    }
    return img;
}

TrackSequence generate_synthetic(const SynthSpec& spec, const std::string& out_dir)
{
    const fs::path img_dir = fs::path(out_dir) / "img";
    std::error_code ec;
    fs::create_directories(img_dir, ec);
    if (ec)
        throw IoFailure("cannot create " + img_dir.string());

    TrackSequence seq;
    seq.name = fs::path(out_dir).filename().string();
    std::vector<RegionRect> truth;

    for (int frame = 0; frame < spec.frame_count; ++frame) {
        char name[16];
        std::snprintf(name, sizeof(name), "%04d.ppm", frame);
        const std::string path = (img_dir / name).string();
        save_ppm(render_synth_frame(spec, frame), path);
        seq.frames.push_back(path);
        truth.push_back(synth_target_rect(spec, frame));
    }

    std::ofstream gt(fs::path(out_dir) / "groundtruth_rect.txt");
    if (!gt)
        throw IoFailure("cannot write ground truth in " + out_dir);
    for (const auto& r : truth)
        gt << r.x << "," << r.y << "," << r.w << "," << r.h << "\n";

    seq.ground_truth = std::move(truth);
    return seq;
}

} // namespace pftrack
