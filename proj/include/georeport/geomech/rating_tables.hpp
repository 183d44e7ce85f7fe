#pragma once

// Band/points tables for RMR, SMR and the Schmidt correlation, loaded from a
// versioned JSON configuration (data/rating_tables.json). All geomechanics
// lookups go through these tables; nothing is hard-coded in the scoring code.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "georeport/core/json_io.hpp"
#include "georeport/error.hpp"
#include "georeport/geomech/inputs.hpp"

namespace georeport::geomech {

struct Band {
    double bound = 0;
    bool strict = false;
    double points = 0;
    friend bool operator==(const Band &, const Band &) = default;
};

// Ordered band list for a continuous parameter.
struct BandTable {
    enum class Kind { at_least, at_most };
    Kind kind = Kind::at_least;
    std::vector<Band> bands;
    double otherwise = 0;

    double lookup(double value) const {
        for (const auto &b : bands) {
            bool hit = kind == Kind::at_least ? (b.strict ? value > b.bound : value >= b.bound)
                                              : (b.strict ? value < b.bound : value <= b.bound);
            if (hit) return b.points;
        }
        return otherwise;
    }

    friend bool operator==(const BandTable &, const BandTable &) = default;
};

template <class E> struct CategoricalTable {
    std::map<E, double> points;
    double lookup(E value) const { return points.at(value); }
    friend bool operator==(const CategoricalTable &, const CategoricalTable &) = default;
};

struct ClassBand {
    int min = 0;
    std::string label;
    std::string description;
    friend bool operator==(const ClassBand &, const ClassBand &) = default;
};

struct RmrTables {
    BandTable ucs_mpa, rqd_pct, spacing_m, persistence_m, aperture_mm;
    CategoricalTable<Roughness> roughness;
    CategoricalTable<Infilling> infilling;
    CategoricalTable<Weathering> weathering;
    CategoricalTable<Groundwater> groundwater;
    std::vector<ClassBand> classes; // descending min
};

struct SmrTables {
    BandTable f1_parallelism_deg;
    BandTable f2_joint_dip_deg;
    double f2_toppling = 1.0;
    BandTable f3_planar_dip_difference_deg;
    BandTable f3_toppling_dip_sum_deg;
    CategoricalTable<Excavation> f4;
    std::vector<ClassBand> classes;
};

// UCS [MPa] = 10^(coefficient * unit_weight * HR + intercept)
struct SchmidtCorrelation {
    std::string name = "deere_miller";
    double coefficient = 0.00088;
    double intercept = 1.01;
    double default_modulus_ratio = 300;
};

struct RatingTables {
    std::string version;
    RmrTables rmr;
    SmrTables smr;
    SchmidtCorrelation schmidt;
};

namespace tables_detail {

inline BandTable read_band_table(const Json &j, const std::string &path) {
    using namespace json_io;
    BandTable t;
    auto kind = get_string(j, "kind", path);
    if (kind == "at_least") t.kind = BandTable::Kind::at_least;
    else if (kind == "at_most") t.kind = BandTable::Kind::at_most;
    else throw ParseError(join_path(path, "kind"), "expected at_least|at_most");
    const Json &bands = get_array(j, "bands", path);
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto bpath = index_path(join_path(path, "bands"), i);
        Band b;
        b.bound = get_number(bands[i], "bound", bpath);
        b.points = get_number(bands[i], "points", bpath);
        if (const Json *s = optional(bands[i], "strict")) {
            if (!s->is_boolean()) throw ParseError(join_path(bpath, "strict"), "expected boolean");
            b.strict = s->get<bool>();
        }
        if (!t.bands.empty()) {
            const Band &prev = t.bands.back();
            bool ordered = t.kind == BandTable::Kind::at_least ? b.bound <= prev.bound : b.bound >= prev.bound;
            if (!ordered) throw ParseError(bpath, "band bounds out of order");
        }
        t.bands.push_back(b);
    }
    t.otherwise = get_number(j, "otherwise", path);
    return t;
}

template <class E> CategoricalTable<E> read_categorical(const Json &j, const std::string &path) {
    CategoricalTable<E> t;
    for (const auto &[value, name] : EnumNames<E>::names)
        t.points[value] = json_io::get_number(j, name, path);
    return t;
}

inline std::vector<ClassBand> read_classes(const Json &arr, const std::string &path) {
    if (!arr.is_array() || arr.empty()) throw ParseError(path, "expected non-empty array");
    std::vector<ClassBand> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto cpath = json_io::index_path(path, i);
        ClassBand c;
        c.min = static_cast<int>(json_io::get_integer(arr[i], "min", cpath));
        c.label = json_io::get_string(arr[i], "class", cpath);
        c.description = json_io::get_string(arr[i], "description", cpath);
        if (!out.empty() && c.min >= out.back().min) throw ParseError(cpath, "class minima must be descending");
        out.push_back(std::move(c));
    }
    if (out.back().min > 0) throw ParseError(path, "lowest class must start at 0");
    return out;
}

} // namespace tables_detail

inline RatingTables parse_rating_tables(const Json &j) {
    using namespace json_io;
    using namespace tables_detail;
    RatingTables t;
    if (get_string(j, "schema", "$") != "georeport.rating-tables")
        throw ParseError("$.schema", "not a rating-tables document");
    t.version = get_string(j, "version", "$");

    const Json &rmr = require(j, "rmr", "$");
    t.rmr.ucs_mpa = read_band_table(require(rmr, "ucs_mpa", "$.rmr"), "$.rmr.ucs_mpa");
    t.rmr.rqd_pct = read_band_table(require(rmr, "rqd_pct", "$.rmr"), "$.rmr.rqd_pct");
    t.rmr.spacing_m = read_band_table(require(rmr, "spacing_m", "$.rmr"), "$.rmr.spacing_m");
    t.rmr.persistence_m = read_band_table(require(rmr, "persistence_m", "$.rmr"), "$.rmr.persistence_m");
    t.rmr.aperture_mm = read_band_table(require(rmr, "aperture_mm", "$.rmr"), "$.rmr.aperture_mm");
    t.rmr.roughness = read_categorical<Roughness>(require(rmr, "roughness", "$.rmr"), "$.rmr.roughness");
    t.rmr.infilling = read_categorical<Infilling>(require(rmr, "infilling", "$.rmr"), "$.rmr.infilling");
    t.rmr.weathering = read_categorical<Weathering>(require(rmr, "weathering", "$.rmr"), "$.rmr.weathering");
    t.rmr.groundwater = read_categorical<Groundwater>(require(rmr, "groundwater", "$.rmr"), "$.rmr.groundwater");
    t.rmr.classes = read_classes(require(rmr, "classes", "$.rmr"), "$.rmr.classes");

    const Json &smr = require(j, "smr", "$");
    t.smr.f1_parallelism_deg = read_band_table(require(smr, "f1_parallelism_deg", "$.smr"), "$.smr.f1_parallelism_deg");
    t.smr.f2_joint_dip_deg = read_band_table(require(smr, "f2_joint_dip_deg", "$.smr"), "$.smr.f2_joint_dip_deg");
    t.smr.f2_toppling = get_number(smr, "f2_toppling", "$.smr");
    t.smr.f3_planar_dip_difference_deg = read_band_table(require(smr, "f3_planar_dip_difference_deg", "$.smr"),
                                                         "$.smr.f3_planar_dip_difference_deg");
    t.smr.f3_toppling_dip_sum_deg =
        read_band_table(require(smr, "f3_toppling_dip_sum_deg", "$.smr"), "$.smr.f3_toppling_dip_sum_deg");
    t.smr.f4 = read_categorical<Excavation>(require(smr, "f4", "$.smr"), "$.smr.f4");
    t.smr.classes = read_classes(require(smr, "classes", "$.smr"), "$.smr.classes");

    const Json &sch = require(j, "schmidt", "$");
    t.schmidt.name = get_string(sch, "correlation", "$.schmidt");
    t.schmidt.coefficient = get_number(sch, "coefficient", "$.schmidt");
    t.schmidt.intercept = get_number(sch, "intercept", "$.schmidt");
    t.schmidt.default_modulus_ratio = get_number(sch, "default_modulus_ratio", "$.schmidt");
    return t;
}

inline RatingTables load_rating_tables(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open rating tables: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j;
    try {
        j = Json::parse(ss.str());
    } catch (const Json::parse_error &e) {
        throw ParseError(path, e.what());
    }
    return parse_rating_tables(j);
}

} // namespace georeport::geomech
