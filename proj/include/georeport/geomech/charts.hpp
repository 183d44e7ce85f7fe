#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "georeport/core/domain.hpp"
#include "georeport/error.hpp"
#include "georeport/geomech/rmr.hpp"
#include "georeport/geomech/smr.hpp"
#include "georeport/geomech/stereonet.hpp"

namespace georeport::geomech {

struct BarDatum {
    std::string set_label;
    int count = 0;
    friend bool operator==(const BarDatum &, const BarDatum &) = default;
};

// One bar per joint-set label in order of first appearance; repeated labels
// are merged by summing counts.
inline std::vector<BarDatum> joint_bar_data(const Outcrop &outcrop) {
    std::vector<BarDatum> bars;
    for (const auto &set : outcrop.joint_sets) {
        auto it = std::find_if(bars.begin(), bars.end(), [&](const BarDatum &b) { return b.set_label == set.set_label; });
        if (it == bars.end()) bars.push_back({set.set_label, set.count});
        else it->count += set.count;
    }
    return bars;
}

struct LabeledPole {
    std::string set_label;
    StereoPoint point;
    friend bool operator==(const LabeledPole &, const LabeledPole &) = default;
};

inline std::vector<LabeledPole> stereonet_poles(const Outcrop &outcrop) {
    std::vector<LabeledPole> out;
    for (const auto &set : outcrop.joint_sets)
        out.push_back({set.set_label, project_pole(set.dip_direction, set.dip)});
    return out;
}

struct OutcropRmr {
    int outcrop_id = 0;
    int n_joint_families = 0;
    RmrResult result;
};

struct RmrExtreme {
    int value = 0;
    int outcrop_id = 0;
    friend bool operator==(const RmrExtreme &, const RmrExtreme &) = default;
};

struct RmrExtremes {
    RmrExtreme min;
    RmrExtreme max;
    std::vector<std::pair<int, int>> families; // (outcrop id, joint families)
};

// Min/max adjusted RMR; on ties the first outcrop in input order is reported.
inline RmrExtremes rmr_extremes(const std::vector<OutcropRmr> &rows) {
    if (rows.empty()) throw EmptyInputError("rmr_extremes needs at least one outcrop");
    RmrExtremes e;
    e.min = e.max = {rows.front().result.adjusted_total, rows.front().outcrop_id};
    for (const auto &row : rows) {
        int v = row.result.adjusted_total;
        if (v < e.min.value) e.min = {v, row.outcrop_id};
        if (v > e.max.value) e.max = {v, row.outcrop_id};
        e.families.emplace_back(row.outcrop_id, row.n_joint_families);
    }
    return e;
}

// RMR for every outcrop; DependencyError when one has no RMR input.
inline std::vector<OutcropRmr> outcrop_rmr_rows(const std::vector<Outcrop> &outcrops, const RatingTables &tables) {
    std::vector<OutcropRmr> rows;
    for (const auto &o : outcrops) {
        if (!o.rmr_input) throw DependencyError("outcrop " + std::to_string(o.id) + " has no RMR input");
        rows.push_back({o.id, o.rmr_input->n_joint_families, compute_rmr(*o.rmr_input, tables)});
    }
    return rows;
}

struct JointSmr {
    std::string set_label;
    SmrResult smr;
};

// SMR of every joint set against the outcrop's slope; empty without slope or RMR input.
inline std::vector<JointSmr> outcrop_smr(const Outcrop &o, const RatingTables &tables) {
    std::vector<JointSmr> out;
    if (!o.slope || !o.rmr_input) return out;
    int basic = compute_rmr(*o.rmr_input, tables).basic_total;
    for (const auto &set : o.joint_sets) {
        SmrInput in{basic,        set.dip_direction,     set.dip, o.slope->dip_direction,
                    o.slope->dip, o.slope->failure_mode, o.slope->excavation};
        out.push_back({set.set_label, compute_smr(in, tables)});
    }
    return out;
}

} // namespace georeport::geomech
