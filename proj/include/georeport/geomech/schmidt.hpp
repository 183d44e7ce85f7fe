#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "georeport/core/validate.hpp"
#include "georeport/geomech/rating_tables.hpp"

namespace georeport::geomech {

struct SchmidtResult {
    double hr_mean_top10 = 0;
    double hr_median_top10 = 0;
    double ucs_mean_mpa = 0;
    double ucs_median_mpa = 0;
    double young_modulus_mpa = 0;
    friend bool operator==(const SchmidtResult &, const SchmidtResult &) = default;
};

inline double ucs_from_rebound(double hr, double unit_weight_kn_m3, const SchmidtCorrelation &c) {
    return std::pow(10.0, c.coefficient * unit_weight_kn_m3 * hr + c.intercept);
}

// Statistics over the ten largest rebound readings, UCS through the configured
// correlation and E = modulus_ratio * mean UCS.
inline SchmidtResult schmidt_summary(const SchmidtTest &test, const SchmidtCorrelation &correlation) {
    if (test.readings.size() < 10)
        throw InsufficientDataError("Schmidt test needs at least 10 readings, got " +
                                    std::to_string(test.readings.size()));
    std::vector<Violation> v;
    validate_schmidt(test, "", v);
    if (!v.empty()) throw ValidationError(v.front().path, v.front().message);

    std::vector<double> top(test.readings);
    std::partial_sort(top.begin(), top.begin() + 10, top.end(), std::greater<>());
    top.resize(10);
    std::sort(top.begin(), top.end());

    SchmidtResult r;
    double sum = 0;
    for (double x : top) sum += x;
    r.hr_mean_top10 = sum / 10.0;
    r.hr_median_top10 = (top[4] + top[5]) / 2.0;
    r.ucs_mean_mpa = ucs_from_rebound(r.hr_mean_top10, test.unit_weight_kn_m3, correlation);
    r.ucs_median_mpa = ucs_from_rebound(r.hr_median_top10, test.unit_weight_kn_m3, correlation);
    r.young_modulus_mpa = test.modulus_ratio * r.ucs_mean_mpa;
    return r;
}

} // namespace georeport::geomech
