#ifndef PFTRACK_LOG_HPP_
#define PFTRACK_LOG_HPP_

#include <string>

namespace pftrack {

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

/// Level comes from the PFTRACK_LOG environment variable (off/info/debug).
LogLevel log_level();

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace pftrack

#endif
