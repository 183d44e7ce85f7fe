#pragma once

#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "georeport/core/domain.hpp"

namespace georeport {

struct Violation {
    std::string path;
    std::string message;
    friend bool operator==(const Violation &, const Violation &) = default;
};

enum class ValidationMode {
    draft,  // persisted work in progress: outcrop list may be empty
    report, // ready for report generation
};

namespace detail {

inline bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (s[i] < '0' || s[i] > '9') return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    int year = std::stoi(std::string(s.substr(0, 4)));
    static constexpr int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12 || day < 1) return false;
    int limit = days_in_month[month - 1];
    if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0)) limit = 29;
    return day <= limit;
}

inline bool is_raster_media_type(std::string_view t) {
    static constexpr std::string_view allowed[] = {"image/jpeg", "image/png",  "image/webp",
                                                   "image/gif",  "image/bmp",  "image/tiff"};
    for (auto a : allowed)
        if (a == t) return true;
    return false;
}

inline bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

inline std::string sub(const std::string &path, std::string_view field) {
    return path.empty() ? std::string(field) : path + "." + std::string(field);
}

} // namespace detail

inline void validate_rmr_input(const geomech::RmrInput &in, const std::string &path, std::vector<Violation> &out) {
    auto check = [&](bool ok, std::string_view field, std::string msg) {
        if (!ok) out.push_back({detail::sub(path, field), std::move(msg)});
    };
    check(in.n_joint_families >= 0, "n_joint_families", "must be >= 0");
    check(std::isfinite(in.ucs_mpa) && in.ucs_mpa >= 0, "ucs_mpa", "must be >= 0 MPa");
    check(std::isfinite(in.rqd_pct) && in.rqd_pct >= 0 && in.rqd_pct <= 100, "rqd_pct", "must be in [0, 100]");
    check(std::isfinite(in.spacing_m) && in.spacing_m > 0, "spacing_m", "must be > 0 m");
    check(std::isfinite(in.persistence_m) && in.persistence_m >= 0, "persistence_m", "must be >= 0 m");
    check(std::isfinite(in.aperture_mm) && in.aperture_mm >= 0, "aperture_mm", "must be >= 0 mm");
    check(in.orientation_adjustment >= -60 && in.orientation_adjustment <= 0, "orientation_adjustment",
          "must be in [-60, 0]");
}

inline void validate_orientation(double dip_direction, double dip, const std::string &path,
                                 std::vector<Violation> &out) {
    if (!(std::isfinite(dip_direction) && dip_direction >= 0 && dip_direction < 360))
        out.push_back({detail::sub(path, "dip_direction"), "must be in [0, 360)"});
    if (!(std::isfinite(dip) && dip >= 0 && dip <= 90)) out.push_back({detail::sub(path, "dip"), "must be in [0, 90]"});
}

inline void validate_schmidt(const geomech::SchmidtTest &t, const std::string &path, std::vector<Violation> &out) {
    if (t.readings.size() < 10) out.push_back({detail::sub(path, "readings"), "at least 10 readings required"});
    for (std::size_t i = 0; i < t.readings.size(); ++i)
        if (!std::isfinite(t.readings[i]) || t.readings[i] < 0)
            out.push_back({detail::sub(path, "readings") + "[" + std::to_string(i) + "]", "must be a finite rebound number >= 0"});
    if (!(std::isfinite(t.unit_weight_kn_m3) && t.unit_weight_kn_m3 > 0))
        out.push_back({detail::sub(path, "unit_weight_kn_m3"), "must be > 0"});
    if (!(std::isfinite(t.modulus_ratio) && t.modulus_ratio > 0))
        out.push_back({detail::sub(path, "modulus_ratio"), "must be > 0"});
}

inline void validate_outcrop(const Outcrop &o, const std::string &path, std::vector<Violation> &out) {
    if (o.id <= 0) out.push_back({path + ".id", "must be a positive integer"});
    const auto &c = o.coordinates;
    if (!(std::isfinite(c.x) && std::isfinite(c.y) && std::isfinite(c.z)))
        out.push_back({path + ".coordinates", "must be finite"});
    for (std::size_t i = 0; i < o.joint_sets.size(); ++i) {
        const auto &s = o.joint_sets[i];
        const std::string spath = path + ".joint_sets[" + std::to_string(i) + "]";
        if (detail::blank(s.set_label)) out.push_back({spath + ".set_label", "must not be empty"});
        validate_orientation(s.dip_direction, s.dip, spath, out);
        if (s.count < 1) out.push_back({spath + ".count", "must be >= 1"});
    }
    std::set<std::string> image_ids;
    for (std::size_t i = 0; i < o.images.size(); ++i) {
        const auto &img = o.images[i];
        const std::string ipath = path + ".images[" + std::to_string(i) + "]";
        if (img.id.empty()) out.push_back({ipath + ".id", "must not be empty"});
        else if (!image_ids.insert(img.id).second) out.push_back({ipath + ".id", "duplicate image id"});
        if (!detail::is_raster_media_type(img.media_type))
            out.push_back({ipath + ".media_type", "must be a raster image type"});
        if (img.byte_length == 0) out.push_back({ipath + ".byte_length", "must be > 0"});
    }
    if (o.rmr_input) validate_rmr_input(*o.rmr_input, path + ".rmr_input", out);
    if (o.schmidt) validate_schmidt(*o.schmidt, path + ".schmidt", out);
    if (o.slope) validate_orientation(o.slope->dip_direction, o.slope->dip, path + ".slope", out);
    for (const auto &[kind, text] : o.generated)
        if (!is_per_outcrop(kind))
            out.push_back({path + ".generated." + std::string(to_string(kind)), "not a per-outcrop section"});
}

// Every invariant violation of the project, in document order. Empty iff the
// project is acceptable for `mode`.
inline std::vector<Violation> validate_project(const Project &p, ValidationMode mode = ValidationMode::report) {
    std::vector<Violation> out;
    if (detail::blank(p.title)) out.push_back({"title", "must not be empty"});
    if (mode == ValidationMode::report && p.authors.empty())
        out.push_back({"authors", "at least one author is required for the cover"});
    for (std::size_t i = 0; i < p.authors.size(); ++i)
        if (detail::blank(p.authors[i])) out.push_back({"authors[" + std::to_string(i) + "]", "must not be empty"});
    if (!p.date.empty() && !detail::is_iso_date(p.date)) out.push_back({"date", "must be an ISO-8601 date"});
    if (mode == ValidationMode::report && p.outcrops.empty())
        out.push_back({"outcrops", "at least one outcrop is required"});

    std::set<int> seen;
    for (std::size_t i = 0; i < p.outcrops.size(); ++i) {
        const std::string opath = "outcrops[" + std::to_string(i) + "]";
        validate_outcrop(p.outcrops[i], opath, out);
        if (!seen.insert(p.outcrops[i].id).second) out.push_back({opath + ".id", "duplicate outcrop id"});
    }
    for (const auto &[kind, text] : p.generated)
        if (is_per_outcrop(kind) || kind == SectionKind::preliminary)
            out.push_back({"generated." + std::string(to_string(kind)), "not a project-level section"});
    return out;
}

} // namespace georeport
