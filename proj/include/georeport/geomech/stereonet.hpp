#pragma once

#include <cmath>
#include <numbers>

namespace georeport::geomech {

struct LineOrientation {
    double trend = 0;  // [0, 360)
    double plunge = 0; // [0, 90]
    friend bool operator==(const LineOrientation &, const LineOrientation &) = default;
};

struct StereoPoint {
    double trend = 0;
    double plunge = 0;
    double x = 0; // east
    double y = 0; // north
    friend bool operator==(const StereoPoint &, const StereoPoint &) = default;
};

inline constexpr double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

// Normal to a plane given by dip direction / dip.
inline LineOrientation pole_of_plane(double dip_direction, double dip) {
    return {std::fmod(dip_direction + 180.0, 360.0), 90.0 - dip};
}

// Lower-hemisphere Lambert equal-area (Schmidt) net on the unit disc.
inline StereoPoint equal_area_project(double trend, double plunge) {
    double r = std::numbers::sqrt2 * std::sin(deg2rad((90.0 - plunge) / 2.0));
    double t = deg2rad(trend);
    return {trend, plunge, r * std::sin(t), r * std::cos(t)};
}

inline StereoPoint project_pole(double dip_direction, double dip) {
    auto pole = pole_of_plane(dip_direction, dip);
    return equal_area_project(pole.trend, pole.plunge);
}

} // namespace georeport::geomech
