#pragma once

#include <memory>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace georeport {

// Shared "georeport" logger (stderr). Tests may swap it with set_logger().
inline std::shared_ptr<spdlog::logger> &logger_slot() {
    static std::shared_ptr<spdlog::logger> l = [] {
        if (auto existing = spdlog::get("georeport")) return existing;
        return spdlog::stderr_color_mt("georeport");
    }();
    return l;
}

inline spdlog::logger &log() { return *logger_slot(); }

inline void set_logger(std::shared_ptr<spdlog::logger> l) { logger_slot() = std::move(l); }

} // namespace georeport
