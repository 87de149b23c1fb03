#include "pftrack/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pftrack {

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T& out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

} // namespace

TrackerConfig parse_tracker_config(const std::string& json_text)
{
    const json j = json::parse(json_text);
    TrackerConfig cfg;

    maybe(j, "particle_count", cfg.particle_count);
    maybe(j, "seed", cfg.seed);
    maybe(j, "tau_inv", cfg.tau_inv);
    maybe(j, "fusion_alpha", cfg.fusion_alpha);
    maybe(j, "scale_clamp_min", cfg.scale_clamp_min);
    maybe(j, "scale_clamp_max", cfg.scale_clamp_max);
    maybe(j, "scale_min", cfg.scale_min);
    maybe(j, "scale_max", cfg.scale_max);
    maybe(j, "fast_histograms", cfg.fast_histograms);
    maybe(j, "color_only", cfg.color_only);
    maybe(j, "adapt_fusion", cfg.adapt_fusion);
    maybe(j, "adapt_template", cfg.adapt_template);
    maybe(j, "adapt_window", cfg.adapt_window);

    if (j.contains("resample")) {
        const json& r = j.at("resample");
        maybe(r, "threshold_fraction", cfg.resample.threshold_fraction);
        maybe(r, "step_coefficient", cfg.resample.step_coefficient);
        maybe(r, "low_factor", cfg.resample.low_factor);
        maybe(r, "high_factor", cfg.resample.high_factor);
        maybe(r, "max_halvings", cfg.resample.max_halvings);
    }
    if (j.contains("likelihood")) {
        const json& l = j.at("likelihood");
        maybe(l, "sigma_color", cfg.likelihood.sigma_color);
        maybe(l, "sigma_edge", cfg.likelihood.sigma_edge);
    }
    if (j.contains("quantizer")) {
        const json& q = j.at("quantizer");
        maybe(q, "hue_bins", cfg.quantizer.hue_bins);
        maybe(q, "sat_bins", cfg.quantizer.sat_bins);
        maybe(q, "val_bins", cfg.quantizer.val_bins);
        maybe(q, "orientation_bins", cfg.quantizer.orientation_bins);
        maybe(q, "magnitude_threshold", cfg.quantizer.magnitude_threshold);
    }
    if (j.contains("motion")) {
        const json& m = j.at("motion");
        maybe(m, "phi1", cfg.motion.phi1);
        maybe(m, "phi2", cfg.motion.phi2);
        maybe(m, "noise_std_pos", cfg.motion.noise_std_pos);
        maybe(m, "noise_std_scale", cfg.motion.noise_std_scale);
    }
    return cfg;
}

TrackerConfig load_tracker_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoFailure("cannot open config " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tracker_config(buffer.str());
}

std::string tracker_config_to_json(const TrackerConfig& cfg)
{
    json j;
    j["particle_count"] = cfg.particle_count;
    j["seed"] = cfg.seed;
    j["tau_inv"] = cfg.tau_inv;
    j["fusion_alpha"] = cfg.fusion_alpha;
    j["scale_clamp_min"] = cfg.scale_clamp_min;
    j["scale_clamp_max"] = cfg.scale_clamp_max;
    j["scale_min"] = cfg.scale_min;
    j["scale_max"] = cfg.scale_max;
    j["fast_histograms"] = cfg.fast_histograms;
    j["color_only"] = cfg.color_only;
    j["adapt_fusion"] = cfg.adapt_fusion;
    j["adapt_template"] = cfg.adapt_template;
    j["adapt_window"] = cfg.adapt_window;
    j["resample"] = {{"threshold_fraction", cfg.resample.threshold_fraction},
                     {"step_coefficient", cfg.resample.step_coefficient},
                     {"low_factor", cfg.resample.low_factor},
                     {"high_factor", cfg.resample.high_factor},
                     {"max_halvings", cfg.resample.max_halvings}};
    j["likelihood"] = {{"sigma_color", cfg.likelihood.sigma_color},
                       {"sigma_edge", cfg.likelihood.sigma_edge}};
    j["quantizer"] = {{"hue_bins", cfg.quantizer.hue_bins},
                      {"sat_bins", cfg.quantizer.sat_bins},
                      {"val_bins", cfg.quantizer.val_bins},
                      {"orientation_bins", cfg.quantizer.orientation_bins},
                      {"magnitude_threshold", cfg.quantizer.magnitude_threshold}};
    j["motion"] = {{"phi1", cfg.motion.phi1},
                   {"phi2", cfg.motion.phi2},
                   {"noise_std_pos", cfg.motion.noise_std_pos},
                   {"noise_std_scale", cfg.motion.noise_std_scale}};
    return j.dump(2);
}

} // namespace pftrack
