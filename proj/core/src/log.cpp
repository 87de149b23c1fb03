#include "pftrack/log.hpp"

#include <cstdlib>
#include <iostream>

namespace pftrack {

LogLevel log_level()
{
    static const LogLevel level = [] {
        const char* env = std::getenv("PFTRACK_LOG");
        if (!env)
            return LogLevel::Off;
        const std::string value(env);
        if (value == "debug")
            return LogLevel::Debug;
        if (value == "info")
            return LogLevel::Info;
        return LogLevel::Off;
    }();
    return level;
}

void log_info(const std::string& msg)
{
    if (log_level() >= LogLevel::Info)
        std::cerr << "[pftrack] " << msg << "\n";
}

void log_debug(const std::string& msg)
{
    if (log_level() >= LogLevel::Debug)
        std::cerr << "[pftrack:debug] " << msg << "\n";
}

} // namespace pftrack
