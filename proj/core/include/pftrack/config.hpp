#ifndef PFTRACK_CONFIG_HPP_
#define PFTRACK_CONFIG_HPP_

#include <string>

#include "pftrack/tracker.hpp"

namespace pftrack {

/// Parses a TrackerConfig from a JSON document; absent keys keep defaults.
TrackerConfig parse_tracker_config(const std::string& json_text);

TrackerConfig load_tracker_config(const std::string& path);

std::string tracker_config_to_json(const TrackerConfig& cfg);

} // namespace pftrack

#endif
