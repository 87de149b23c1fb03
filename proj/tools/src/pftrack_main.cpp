#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "pftrack/config.hpp"
#include "pftrack/hist_bench.hpp"
#include "pftrack/log.hpp"
#include "pftrack/sequence.hpp"
#include "pftrack/synthetic.hpp"
#include "pftrack/ungm.hpp"

namespace fs = std::filesystem;
using namespace pftrack;

namespace {

RegionRect parse_init_box(const std::string& text)
{
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    RegionRect r;
    if (!(in >> r.x >> r.y >> r.w >> r.h) || r.w <= 0 || r.h <= 0)
        throw CLI::ValidationError("--init", "expected x,y,w,h with positive size");
    return r;
}

int run_ungm_bench(const UngmParams& params, const std::string& out_dir)
{
    fs::create_directories(out_dir);
    const auto results = run_comparison(params);

    std::ofstream runs(fs::path(out_dir) / "ungm_runs.csv");
    runs << "run,rmse_trpf,rmse_irpf\n";
    double sum_trpf = 0.0;
    double sum_irpf = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        runs << i << "," << results[i].rmse_trpf << "," << results[i].rmse_irpf << "\n";
        sum_trpf += results[i].rmse_trpf;
        sum_irpf += results[i].rmse_irpf;
    }

    std::ofstream trace(fs::path(out_dir) / "ungm_trace.csv");
    trace << "step,truth,est_trpf,est_irpf\n";
    const auto& first = results.front();
    for (std::size_t k = 0; k < first.true_states.size(); ++k)
        trace << (k + 1) << "," << first.true_states[k] << "," << first.estimates_trpf[k]
              << "," << first.estimates_irpf[k] << "\n";

    std::cout << "runs: " << results.size() << "\n"
              << "mean RMSE traditional: " << sum_trpf / results.size() << "\n"
              << "mean RMSE improved:    " << sum_irpf / results.size() << "\n";
    return 0;
}

std::vector<RegionRect> rects_from_results(const std::vector<FrameResult>& results)
{
    std::vector<RegionRect> rects;
    rects.reserve(results.size());
    for (const auto& r : results)
        rects.push_back(r.rect);
    return rects;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"particle-filter visual tracking toolkit"};
    app.require_subcommand(1);

    // ungm-bench
    auto* ungm_cmd = app.add_subcommand("ungm-bench",
                                        "compare traditional vs improved resampling on the UNGM");
    UngmParams ungm_params;
    std::string ungm_out = ".";
    ungm_cmd->add_option("--seed", ungm_params.seed, "master seed");
    ungm_cmd->add_option("--runs", ungm_params.runs, "paired simulation runs");
    ungm_cmd->add_option("--particles", ungm_params.particle_count, "particle count");
    ungm_cmd->add_option("--steps", ungm_params.steps, "time steps per run");
    ungm_cmd->add_option("--step-coefficient", ungm_params.step_coefficient, "move step K");
    ungm_cmd->add_option("--process-noise-std", ungm_params.process_noise_std,
                         "process noise standard deviation");
    ungm_cmd->add_option("--measurement-var", ungm_params.measurement_noise_var,
                         "measurement noise variance");
    ungm_cmd->add_option("--out", ungm_out, "output directory for CSVs");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic tracking sequence");
    SynthSpec synth_spec;
    std::string synth_out;
    std::string motion = "linear";
    std::pair<int, int> occlusion{-1, -1};
    std::pair<int, int> illumination{-1, -1};
    synth_cmd->add_option("--out", synth_out, "output sequence directory")->required();
    synth_cmd->add_option("--frames", synth_spec.frame_count, "frame count");
    synth_cmd->add_option("--width", synth_spec.width, "frame width");
    synth_cmd->add_option("--height", synth_spec.height, "frame height");
    synth_cmd->add_option("--motion", motion, "linear or sinusoidal");
    synth_cmd->add_option("--speed", synth_spec.speed_px, "horizontal px per frame");
    synth_cmd->add_option("--amplitude", synth_spec.sine_amplitude,
                          "vertical swing for sinusoidal motion");
    synth_cmd->add_option("--occlusion", occlusion, "occlusion interval: start end");
    synth_cmd->add_option("--illumination", illumination, "illumination interval: start end");
    synth_cmd->add_option("--gain", synth_spec.illumination_gain, "illumination gain");
    synth_cmd->add_flag("--distractor", synth_spec.distractor, "add a same-color distractor patch");
    synth_cmd->add_option("--seed", synth_spec.seed, "seed for background noise");

    // track
    auto* track_cmd = app.add_subcommand("track", "track a target through a sequence");
    std::string seq_dir;
    std::string config_path;
    std::string init_text;
    std::string track_out = ".";
    bool color_only = false;
    bool exact_histograms = false;
    bool overlay = false;
    std::uint64_t track_seed = 0;
    bool seed_given = false;
    track_cmd->add_option("--seq", seq_dir, "sequence directory (OTB layout)")->required();
    track_cmd->add_option("--config", config_path, "tracker config JSON");
    track_cmd->add_option("--init", init_text, "initial box x,y,w,h (default: ground truth frame 0)");
    track_cmd->add_flag("--color-only", color_only, "disable the edge feature and fusion");
    track_cmd->add_flag("--exact-histograms", exact_histograms,
                        "kernel-weighted per-particle histograms instead of integral queries");
    track_cmd->add_option("--seed", track_seed, "tracker seed")->each([&](const std::string&) {
        seed_given = true;
    });
    track_cmd->add_option("--out", track_out, "output directory");
    track_cmd->add_flag("--overlay", overlay, "write per-frame overlay images");

    // bench-hist
    auto* bench_cmd = app.add_subcommand("bench-hist", "naive vs integral histogram timings");
    std::string bench_image;
    std::vector<int> bench_particles{20, 50, 100, 500};
    int bench_region_w = 48;
    int bench_region_h = 48;
    std::string bench_out = "bench_hist.csv";
    bench_cmd->add_option("--image", bench_image, "PPM image (default: generated 480x360)");
    bench_cmd->add_option("--particles", bench_particles, "particle counts to time");
    bench_cmd->add_option("--region-w", bench_region_w, "query region width");
    bench_cmd->add_option("--region-h", bench_region_h, "query region height");
    bench_cmd->add_option("--out", bench_out, "output CSV path");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score tracking results against ground truth");
    std::string eval_seq;
    std::string eval_results;
    std::string eval_out = "eval.csv";
    eval_cmd->add_option("--seq", eval_seq, "sequence directory with ground truth")->required();
    eval_cmd->add_option("--results", eval_results, "results.csv from the track subcommand")
        ->required();
    eval_cmd->add_option("--out", eval_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ungm_cmd)
            return run_ungm_bench(ungm_params, ungm_out);

        if (*synth_cmd) {
            if (motion == "sinusoidal")
                synth_spec.motion = SynthSpec::Motion::Sinusoidal;
            else if (motion != "linear")
                throw Error("--motion must be linear or sinusoidal");
            synth_spec.occlusion_start = occlusion.first;
            synth_spec.occlusion_end = occlusion.second;
            synth_spec.illumination_start = illumination.first;
            synth_spec.illumination_end = illumination.second;
            const auto seq = generate_synthetic(synth_spec, synth_out);
            std::cout << "wrote " << seq.frames.size() << " frames to " << synth_out << "\n";
            return 0;
        }

        if (*track_cmd) {
            const TrackSequence seq = load_sequence(seq_dir);
            TrackerConfig cfg;
            if (!config_path.empty())
                cfg = load_tracker_config(config_path);
            if (color_only)
                cfg.color_only = true;
            if (exact_histograms)
                cfg.fast_histograms = false;
            if (seed_given)
                cfg.seed = track_seed;

            RegionRect init_box;
            if (!init_text.empty()) {
                init_box = parse_init_box(init_text);
            } else if (seq.ground_truth) {
                init_box = seq.ground_truth->front();
            } else {
                std::cerr << "error: --init is required when the sequence has no ground truth\n"
                          << track_cmd->help();
                return 2;
            }

            fs::create_directories(track_out);
            const auto results = track_sequence(seq, init_box, cfg);
            write_results_csv(results, (fs::path(track_out) / "results.csv").string());

            if (overlay) {
                const fs::path overlay_dir = fs::path(track_out) / "overlay";
                fs::create_directories(overlay_dir);
                for (std::size_t i = 0; i < seq.frames.size(); ++i) {
                    char name[16];
                    std::snprintf(name, sizeof(name), "%04zu.ppm", i);
                    save_ppm(draw_rect_overlay(load_ppm(seq.frames[i]), results[i].rect),
                             (overlay_dir / name).string());
                }
            }

            if (seq.ground_truth) {
                const auto report = evaluate(rects_from_results(results), seq);
                write_eval_csv(report, (fs::path(track_out) / "eval.csv").string());
                std::cout << "mean CLE: " << report.mean_cle
                          << "  RMSE: " << report.rmse_cle
                          << "  success: " << report.success_rate << "\n";
            } else {
                std::cout << "tracked " << results.size() << " frames\n";
            }
            return 0;
        }

        if (*bench_cmd) {
            ImageBuffer img;
            if (!bench_image.empty()) {
                img = load_ppm(bench_image);
            } else {
                SynthSpec spec;
                spec.width = 480;
                spec.height = 360;
                img = render_synth_frame(spec, 0);
            }
            const auto rows = bench_histograms(img, bench_particles, bench_region_w, bench_region_h);
            write_hist_bench_csv(rows, bench_out);
            for (const auto& r : rows)
                std::cout << r.particles << " particles: naive " << r.naive_total_s
                          << " s, integral " << (r.integral_build_s + r.integral_query_s)
                          << " s (build " << r.integral_build_s << ")\n";
            return 0;
        }

        if (*eval_cmd) {
            const TrackSequence seq = load_sequence(eval_seq);
            std::ifstream in(eval_results);
            if (!in)
                throw IoFailure("cannot open " + eval_results);
            std::vector<RegionRect> rects;
            std::string line;
            std::getline(in, line); // header
            while (std::getline(in, line)) {
                if (line.empty())
                    continue;
                std::replace(line.begin(), line.end(), ',', ' ');
                std::istringstream row(line);
                int frame;
                double cx, cy;
                int w, h;
                if (!(row >> frame >> cx >> cy >> w >> h))
                    throw IoFailure(eval_results + ": malformed row");
                rects.push_back({static_cast<int>(std::lround(cx - w / 2.0)),
                                 static_cast<int>(std::lround(cy - h / 2.0)), w, h});
            }
            const auto report = evaluate(rects, seq);
            write_eval_csv(report, eval_out);
            std::cout << "mean CLE: " << report.mean_cle << "  RMSE: " << report.rmse_cle
                      << "  success: " << report.success_rate << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
