#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "georeport/core/validate.hpp"
#include "georeport/geomech/rating_tables.hpp"
#include "georeport/geomech/rmr.hpp"

namespace georeport::geomech {

struct SmrResult {
    double f1 = 0;
    double f2 = 0;
    double f3 = 0;
    double f4 = 0;
    double smr_total = 0;
    RmrClass smr_class;
    friend bool operator==(const SmrResult &, const SmrResult &) = default;
};

// Smallest angle between two azimuths, in [0, 180].
inline double azimuth_difference(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

// Discrete factor tables, no interpolation. For wedges the joint angles are the
// intersection line trend/plunge and the planar criteria apply.
inline SmrResult compute_smr(const SmrInput &in, const RatingTables &tables) {
    std::vector<Violation> v;
    if (in.rmr_basic < 0 || in.rmr_basic > 100) v.push_back({"rmr_basic", "must be in [0, 100]"});
    std::vector<Violation> joint, slope;
    validate_orientation(in.joint_dip_direction, in.joint_dip, "joint", joint);
    validate_orientation(in.slope_dip_direction, in.slope_dip, "slope", slope);
    for (auto &x : joint) v.push_back({x.path == "joint.dip" ? "joint_dip" : "joint_dip_direction", x.message});
    for (auto &x : slope) v.push_back({x.path == "slope.dip" ? "slope_dip" : "slope_dip_direction", x.message});
    if (!v.empty()) throw ValidationError(v.front().path, v.front().message);

    const SmrTables &t = tables.smr;
    SmrResult r;
    const bool toppling = in.failure_mode == FailureMode::toppling;
    double parallelism = toppling ? azimuth_difference(in.joint_dip_direction, in.slope_dip_direction + 180.0)
                                  : azimuth_difference(in.joint_dip_direction, in.slope_dip_direction);
    r.f1 = t.f1_parallelism_deg.lookup(parallelism);
    r.f2 = toppling ? t.f2_toppling : t.f2_joint_dip_deg.lookup(in.joint_dip);
    r.f3 = toppling ? t.f3_toppling_dip_sum_deg.lookup(in.joint_dip + in.slope_dip)
                    : t.f3_planar_dip_difference_deg.lookup(in.joint_dip - in.slope_dip);
    r.f4 = t.f4.lookup(in.excavation);
    r.smr_total = in.rmr_basic + r.f1 * r.f2 * r.f3 + r.f4;
    r.smr_class = rmr_detail::classify(static_cast<int>(std::floor(r.smr_total)), t.classes);
    return r;
}

} // namespace georeport::geomech
