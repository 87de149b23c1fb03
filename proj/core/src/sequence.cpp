#include "pftrack/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pftrack/log.hpp"

namespace fs = std::filesystem;

namespace pftrack {

namespace {

std::optional<long> numeric_stem(const fs::path& p)
{
    const std::string stem = p.stem().string();
    std::string digits;
    for (char c : stem)
        if (std::isdigit(static_cast<unsigned char>(c)))
            digits.push_back(c);
    if (digits.empty())
        return std::nullopt;
    return std::stol(digits);
}

RegionRect parse_rect_line(const std::string& line, int line_number)
{
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::replace(cleaned.begin(), cleaned.end(), '\t', ' ');
    std::istringstream in(cleaned);
    RegionRect r;
    if (!(in >> r.x >> r.y >> r.w >> r.h))
        throw MalformedGroundTruth("groundtruth_rect.txt line " + std::to_string(line_number)
                                   + ": expected x,y,w,h");
    return r;
}

} // namespace

TrackSequence load_sequence(const std::string& dir)
{
    TrackSequence seq;
    seq.name = fs::path(dir).filename().string();

    const fs::path img_dir = fs::path(dir) / "img";
    if (!fs::is_directory(img_dir))
        throw MissingFrames(dir + ": no img/ directory");

    std::vector<std::pair<long, std::string>> numbered;
    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto ext = entry.path().extension().string();
        if (ext != ".ppm" && ext != ".png" && ext != ".jpg")
            continue;
        if (const auto n = numeric_stem(entry.path()))
            numbered.emplace_back(*n, entry.path().string());
    }
    if (numbered.empty())
        throw MissingFrames(dir + ": img/ holds no numbered frames");
    std::sort(numbered.begin(), numbered.end());
    for (auto& [n, path] : numbered)
        seq.frames.push_back(std::move(path));

    const fs::path gt_path = fs::path(dir) / "groundtruth_rect.txt";
    if (fs::exists(gt_path)) {
        std::ifstream in(gt_path);
        std::vector<RegionRect> rects;
        std::string line;
        int line_number = 0;
        while (std::getline(in, line)) {
            ++line_number;
            if (line.empty())
                continue;
            rects.push_back(parse_rect_line(line, line_number));
        }
        if (rects.size() != seq.frames.size())
            throw MalformedGroundTruth("groundtruth_rect.txt has " + std::to_string(rects.size())
                                       + " rects for " + std::to_string(seq.frames.size())
                                       + " frames");
        seq.ground_truth = std::move(rects);
    }
    return seq;
}

double center_location_error(const RegionRect& estimate, const RegionRect& truth)
{
    return std::hypot(estimate.cx() - truth.cx(), estimate.cy() - truth.cy());
}

EvalReport evaluate(const std::vector<RegionRect>& results, const TrackSequence& seq)
{
    if (!seq.ground_truth)
        throw NoGroundTruth();
    if (results.size() != seq.ground_truth->size())
        throw LengthMismatch("result count does not match ground truth count");

    EvalReport report;
    report.cle.reserve(results.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    int successes = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const double e = center_location_error(results[i], (*seq.ground_truth)[i]);
        report.cle.push_back(e);
        sum += e;
        sum_sq += e * e;
        if (e < 20.0)
            ++successes;
    }
    report.mean_cle = sum / results.size();
    report.rmse_cle = std::sqrt(sum_sq / results.size());
    report.success_rate = static_cast<double>(successes) / results.size();
    return report;
}

std::vector<FrameResult> track_sequence(const TrackSequence& seq, const RegionRect& init_box,
                                        const TrackerConfig& cfg)
{
    if (seq.frames.empty())
        throw MissingFrames(seq.name + ": sequence has no frames");

    const ImageBuffer first = load_ppm(seq.frames.front());
    Tracker tracker(first, init_box, cfg);

    std::vector<FrameResult> results;
    results.reserve(seq.frames.size());

    FrameResult init_result;
    init_result.rect = init_box;
    init_result.state = {init_box.cx(), init_box.cy(), 1.0};
    init_result.diag.ess = static_cast<double>(cfg.particle_count);
    init_result.diag.theta_color = tracker.target_template().theta_color;
    results.push_back(init_result);

    for (std::size_t i = 1; i < seq.frames.size(); ++i) {
        const ImageBuffer frame = load_ppm(seq.frames[i]);
        results.push_back(tracker.track_frame(frame));
        log_debug("frame " + std::to_string(i) + " cx=" + std::to_string(results.back().state.cx)
                  + " cy=" + std::to_string(results.back().state.cy));
    }
    return results;
}

void write_results_csv(const std::vector<FrameResult>& results, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoFailure("cannot open " + path + " for writing");
    out << "frame,cx,cy,w,h,ess,theta_color,d_color,rho_edge,resampled\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << i << "," << r.state.cx << "," << r.state.cy << "," << r.rect.w << ","
            << r.rect.h << "," << r.diag.ess << "," << r.diag.theta_color << ","
            << r.diag.d_color << "," << r.diag.rho_edge << "," << (r.diag.resampled ? 1 : 0)
            << "\n";
    }
}

void write_eval_csv(const EvalReport& report, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoFailure("cannot open " + path + " for writing");
    out << "frame,cle\n";
    for (std::size_t i = 0; i < report.cle.size(); ++i)
        out << i << "," << report.cle[i] << "\n";
}

ImageBuffer draw_rect_overlay(ImageBuffer frame, const RegionRect& rect)
{
    const auto clamped = clamp_region(rect, frame.width, frame.height);
    if (!clamped)
        return frame;
    const int x0 = clamped->x;
    const int y0 = clamped->y;
    const int x1 = clamped->x + clamped->w - 1;
    const int y1 = clamped->y + clamped->h - 1;
    auto mark = [&](int x, int y) {
        std::uint8_t* p = frame.at(x, y);
        p[0] = 0;
        p[1] = 255;
        p[2] = 0;
    };
    for (int x = x0; x <= x1; ++x) {
        mark(x, y0);
        mark(x, y1);
    }
    for (int y = y0; y <= y1; ++y) {
        mark(x0, y);
        mark(x1, y);
    }
    return frame;
}

} // namespace pftrack
