#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace vlab {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("VM_LOG");
        if (!env) return LogLevel::info;
        std::string v(env);
        if (v == "quiet") return LogLevel::quiet;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

template <typename... Args>
void log_info(const char* fmt, Args... args) {
    if (log_level() >= LogLevel::info) {
        if constexpr (sizeof...(args) == 0) {
            std::fprintf(stderr, "%s\n", fmt);
        } else {
            std::fprintf(stderr, fmt, args...);
            std::fprintf(stderr, "\n");
        }
    }
}

template <typename... Args>
void log_debug(const char* fmt, Args... args) {
    if (log_level() >= LogLevel::debug) {
        if constexpr (sizeof...(args) == 0) {
            std::fprintf(stderr, "%s\n", fmt);
        } else {
            std::fprintf(stderr, fmt, args...);
            std::fprintf(stderr, "\n");
        }
    }
}

} // namespace vlab
