#pragma once

#include "georeport/core/json_io.hpp"
#include "georeport/geomech/rmr.hpp"
#include "georeport/geomech/schmidt.hpp"
#include "georeport/geomech/smr.hpp"
#include "georeport/geomech/stereonet.hpp"

namespace georeport::service {

inline Json write_class(const geomech::RmrClass &c) { return Json{{"label", c.label}, {"description", c.description}}; }

inline Json write(const geomech::RmrResult &r) {
    Json pts = Json::object();
    for (const auto &[k, v] : r.per_parameter_points) pts[std::string(to_string(k))] = v;
    return Json{{"per_parameter_points", std::move(pts)},
                {"condition_points", r.condition_points},
                {"basic_total", r.basic_total},
                {"adjusted_total", r.adjusted_total},
                {"class", write_class(r.rmr_class)}};
}

inline Json write(const geomech::SmrResult &r) {
    return Json{{"f1", r.f1}, {"f2", r.f2}, {"f3", r.f3}, {"f4", r.f4}, {"smr_total", r.smr_total},
                {"class", write_class(r.smr_class)}};
}

inline Json write(const geomech::SchmidtResult &r) {
    return Json{{"hr_mean_top10", r.hr_mean_top10},
                {"hr_median_top10", r.hr_median_top10},
                {"ucs_mean_mpa", r.ucs_mean_mpa},
                {"ucs_median_mpa", r.ucs_median_mpa},
                {"young_modulus_mpa", r.young_modulus_mpa}};
}

inline Json write(const geomech::StereoPoint &p, const std::string &label = {}) {
    Json j;
    if (!label.empty()) j["label"] = label;
    j["trend"] = p.trend;
    j["plunge"] = p.plunge;
    j["x"] = p.x;
    j["y"] = p.y;
    return j;
}

} // namespace georeport::service
