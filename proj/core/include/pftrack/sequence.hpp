#ifndef PFTRACK_SEQUENCE_HPP_
#define PFTRACK_SEQUENCE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pftrack/image.hpp"
#include "pftrack/tracker.hpp"

namespace pftrack {

/// Ordered frame files plus optional per-frame ground truth rectangles.
struct TrackSequence {
    std::string name;
    std::vector<std::string> frames;
    std::optional<std::vector<RegionRect>> ground_truth;
};

struct EvalReport {
    std::vector<double> cle;  // per-frame center location error, pixels
    double rmse_cle = 0.0;
    double mean_cle = 0.0;
    double success_rate = 0.0; // fraction of frames with CLE < 20 px
};

/// Loads an OTB-style directory: img/ with numbered frames, optional
/// groundtruth_rect.txt with one "x,y,w,h" line per frame.
TrackSequence load_sequence(const std::string& dir);

double center_location_error(const RegionRect& estimate, const RegionRect& truth);

EvalReport evaluate(const std::vector<RegionRect>& results, const TrackSequence& seq);

/// Runs the tracker over all frames. The first frame initializes the template
/// from init_box and is reported as-is.
std::vector<FrameResult> track_sequence(const TrackSequence& seq, const RegionRect& init_box,
                                        const TrackerConfig& cfg);

void write_results_csv(const std::vector<FrameResult>& results, const std::string& path);
void write_eval_csv(const EvalReport& report, const std::string& path);

/// Burns a rectangle outline into a copy of the frame (pure observer).
ImageBuffer draw_rect_overlay(ImageBuffer frame, const RegionRect& rect);

} // namespace pftrack

#endif
