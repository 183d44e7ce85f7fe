#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "georeport/core/validate.hpp"
#include "georeport/geomech/rating_tables.hpp"

namespace georeport::geomech {

enum class RmrParameter { ucs, rqd, spacing, persistence, aperture, roughness, infilling, weathering, groundwater };

struct RmrClass {
    std::string label; // "I".."V"
    std::string description;
    friend bool operator==(const RmrClass &, const RmrClass &) = default;
};

struct RmrResult {
    std::map<RmrParameter, int> per_parameter_points;
    int condition_points = 0; // persistence + aperture + roughness + infilling + weathering
    int basic_total = 0;
    int adjusted_total = 0;
    RmrClass rmr_class;
    friend bool operator==(const RmrResult &, const RmrResult &) = default;
};

namespace rmr_detail {
inline int to_points(double p) { return static_cast<int>(std::lround(p)); }

inline RmrClass classify(int total, const std::vector<ClassBand> &classes) {
    int clamped = std::clamp(total, 0, 100);
    for (const auto &c : classes)
        if (clamped >= c.min) return {c.label, c.description};
    return {classes.back().label, classes.back().description};
}
} // namespace rmr_detail

// Class band for an RMR total; totals below 0 class as 0.
inline RmrClass classify_rmr(int total, const RatingTables &tables) {
    return rmr_detail::classify(total, tables.rmr.classes);
}

inline void require_valid(const RmrInput &in) {
    std::vector<Violation> v;
    validate_rmr_input(in, "", v);
    if (!v.empty()) throw ValidationError(v.front().path, v.front().message);
}

inline RmrResult compute_rmr(const RmrInput &in, const RatingTables &tables) {
    require_valid(in);
    const RmrTables &t = tables.rmr;
    using rmr_detail::to_points;
    RmrResult r;
    auto &pts = r.per_parameter_points;
    pts[RmrParameter::ucs] = to_points(t.ucs_mpa.lookup(in.ucs_mpa));
    pts[RmrParameter::rqd] = to_points(t.rqd_pct.lookup(in.rqd_pct));
    pts[RmrParameter::spacing] = to_points(t.spacing_m.lookup(in.spacing_m));
    pts[RmrParameter::persistence] = to_points(t.persistence_m.lookup(in.persistence_m));
    pts[RmrParameter::aperture] = to_points(t.aperture_mm.lookup(in.aperture_mm));
    pts[RmrParameter::roughness] = to_points(t.roughness.lookup(in.roughness));
    pts[RmrParameter::infilling] = to_points(t.infilling.lookup(in.infilling));
    pts[RmrParameter::weathering] = to_points(t.weathering.lookup(in.weathering));
    pts[RmrParameter::groundwater] = to_points(t.groundwater.lookup(in.groundwater));

    r.condition_points = pts[RmrParameter::persistence] + pts[RmrParameter::aperture] +
                         pts[RmrParameter::roughness] + pts[RmrParameter::infilling] +
                         pts[RmrParameter::weathering];
    r.basic_total = pts[RmrParameter::ucs] + pts[RmrParameter::rqd] + pts[RmrParameter::spacing] +
                    r.condition_points + pts[RmrParameter::groundwater];
    r.adjusted_total = r.basic_total + in.orientation_adjustment;
    r.rmr_class = classify_rmr(r.adjusted_total, tables);
    return r;
}

} // namespace georeport::geomech

namespace georeport {
template <> struct EnumNames<geomech::RmrParameter> {
    static constexpr std::array<std::pair<geomech::RmrParameter, std::string_view>, 9> names{{
        {geomech::RmrParameter::ucs, "ucs"},
        {geomech::RmrParameter::rqd, "rqd"},
        {geomech::RmrParameter::spacing, "spacing"},
        {geomech::RmrParameter::persistence, "persistence"},
        {geomech::RmrParameter::aperture, "aperture"},
        {geomech::RmrParameter::roughness, "roughness"},
        {geomech::RmrParameter::infilling, "infilling"},
        {geomech::RmrParameter::weathering, "weathering"},
        {geomech::RmrParameter::groundwater, "groundwater"},
    }};
};
} // namespace georeport
