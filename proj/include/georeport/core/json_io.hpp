#pragma once

// Canonical JSON form of the field-data model. Field names are lower_snake_case
// and emitted in declaration order, so dump() of the same value is byte-stable.

#include <cmath>
#include <string>
#include <string_view>

#include <json.hpp>

#include "georeport/core/domain.hpp"
#include "georeport/error.hpp"

namespace georeport {

using Json = nlohmann::ordered_json;

namespace json_io {

inline std::string join_path(const std::string &path, std::string_view key) {
    return path + "." + std::string(key);
}

inline std::string index_path(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline const Json &require(const Json &obj, std::string_view key, const std::string &path) {
    if (!obj.is_object()) throw ParseError(path, "expected object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(join_path(path, key), "missing field");
    return *it;
}

inline const Json *optional(const Json &obj, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
}

inline std::string as_string(const Json &v, const std::string &path) {
    if (!v.is_string()) throw ParseError(path, "expected string");
    return v.get<std::string>();
}

inline double as_number(const Json &v, const std::string &path) {
    if (!v.is_number()) throw ParseError(path, "expected number");
    return v.get<double>();
}

inline long long as_integer(const Json &v, const std::string &path) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d)) return static_cast<long long>(d);
    }
    throw ParseError(path, "expected integer");
}

template <class E> E as_enum(const Json &v, const std::string &path) {
    auto text = as_string(v, path);
    auto e = enum_from_string<E>(text);
    if (!e) throw ParseError(path, "unknown value '" + text + "', expected " + enum_choices<E>());
    return *e;
}

inline std::string get_string(const Json &obj, std::string_view key, const std::string &path) {
    return as_string(require(obj, key, path), join_path(path, key));
}

inline std::string get_string_or(const Json &obj, std::string_view key, const std::string &path,
                                 std::string fallback = {}) {
    if (!obj.is_object()) throw ParseError(path, "expected object");
    if (const Json *v = optional(obj, key)) return as_string(*v, join_path(path, key));
    return fallback;
}

inline double get_number(const Json &obj, std::string_view key, const std::string &path) {
    return as_number(require(obj, key, path), join_path(path, key));
}

inline long long get_integer(const Json &obj, std::string_view key, const std::string &path) {
    return as_integer(require(obj, key, path), join_path(path, key));
}

template <class E> E get_enum(const Json &obj, std::string_view key, const std::string &path) {
    return as_enum<E>(require(obj, key, path), join_path(path, key));
}

inline const Json &get_array(const Json &obj, std::string_view key, const std::string &path) {
    const Json &v = require(obj, key, path);
    if (!v.is_array()) throw ParseError(join_path(path, key), "expected array");
    return v;
}

} // namespace json_io

// ---- geomech inputs ----------------------------------------------------------

inline Json write(const geomech::RmrInput &in) {
    Json j;
    j["n_joint_families"] = in.n_joint_families;
    j["ucs_mpa"] = in.ucs_mpa;
    j["rqd_pct"] = in.rqd_pct;
    j["spacing_m"] = in.spacing_m;
    j["persistence_m"] = in.persistence_m;
    j["aperture_mm"] = in.aperture_mm;
    j["roughness"] = to_string(in.roughness);
    j["infilling"] = to_string(in.infilling);
    j["weathering"] = to_string(in.weathering);
    j["groundwater"] = to_string(in.groundwater);
    j["orientation_adjustment"] = in.orientation_adjustment;
    return j;
}

inline void read(const Json &j, const std::string &path, geomech::RmrInput &out) {
    using namespace json_io;
    out.n_joint_families = static_cast<int>(get_integer(j, "n_joint_families", path));
    out.ucs_mpa = get_number(j, "ucs_mpa", path);
    out.rqd_pct = get_number(j, "rqd_pct", path);
    out.spacing_m = get_number(j, "spacing_m", path);
    out.persistence_m = get_number(j, "persistence_m", path);
    out.aperture_mm = get_number(j, "aperture_mm", path);
    out.roughness = get_enum<geomech::Roughness>(j, "roughness", path);
    // Infilling is optional on input; absent means "none".
    out.infilling = optional(j, "infilling") ? get_enum<geomech::Infilling>(j, "infilling", path)
                                             : geomech::Infilling::none;
    out.weathering = get_enum<geomech::Weathering>(j, "weathering", path);
    out.groundwater = get_enum<geomech::Groundwater>(j, "groundwater", path);
    out.orientation_adjustment =
        optional(j, "orientation_adjustment") ? static_cast<int>(get_integer(j, "orientation_adjustment", path)) : 0;
}

inline Json write(const geomech::SlopeGeometry &s) {
    Json j;
    j["dip_direction"] = s.dip_direction;
    j["dip"] = s.dip;
    j["failure_mode"] = to_string(s.failure_mode);
    j["excavation"] = to_string(s.excavation);
    return j;
}

inline void read(const Json &j, const std::string &path, geomech::SlopeGeometry &out) {
    using namespace json_io;
    out.dip_direction = get_number(j, "dip_direction", path);
    out.dip = get_number(j, "dip", path);
    out.failure_mode = get_enum<geomech::FailureMode>(j, "failure_mode", path);
    out.excavation = get_enum<geomech::Excavation>(j, "excavation", path);
}

inline Json write(const geomech::SmrInput &s) {
    Json j;
    j["rmr_basic"] = s.rmr_basic;
    j["joint_dip_direction"] = s.joint_dip_direction;
    j["joint_dip"] = s.joint_dip;
    j["slope_dip_direction"] = s.slope_dip_direction;
    j["slope_dip"] = s.slope_dip;
    j["failure_mode"] = to_string(s.failure_mode);
    j["excavation"] = to_string(s.excavation);
    return j;
}

inline void read(const Json &j, const std::string &path, geomech::SmrInput &out) {
    using namespace json_io;
    out.rmr_basic = static_cast<int>(get_integer(j, "rmr_basic", path));
    out.joint_dip_direction = get_number(j, "joint_dip_direction", path);
    out.joint_dip = get_number(j, "joint_dip", path);
    out.slope_dip_direction = get_number(j, "slope_dip_direction", path);
    out.slope_dip = get_number(j, "slope_dip", path);
    out.failure_mode = get_enum<geomech::FailureMode>(j, "failure_mode", path);
    out.excavation = get_enum<geomech::Excavation>(j, "excavation", path);
}

inline Json write(const geomech::SchmidtTest &t) {
    Json j;
    j["method"] = t.method;
    j["readings"] = t.readings;
    j["unit_weight_kn_m3"] = t.unit_weight_kn_m3;
    j["modulus_ratio"] = t.modulus_ratio;
    return j;
}

inline void read(const Json &j, const std::string &path, geomech::SchmidtTest &out) {
    using namespace json_io;
    out.method = get_string_or(j, "method", path);
    const Json &readings = get_array(j, "readings", path);
    out.readings.clear();
    for (std::size_t i = 0; i < readings.size(); ++i)
        out.readings.push_back(as_number(readings[i], index_path(join_path(path, "readings"), i)));
    out.unit_weight_kn_m3 = get_number(j, "unit_weight_kn_m3", path);
    out.modulus_ratio = optional(j, "modulus_ratio") ? get_number(j, "modulus_ratio", path) : 300.0;
}

// ---- field-data model ----------------------------------------------------------

inline Json write(const GeneratedTexts &texts) {
    Json j = Json::object();
    for (const auto &[kind, text] : texts) j[std::string(to_string(kind))] = text;
    return j;
}

inline void read(const Json &j, const std::string &path, GeneratedTexts &out) {
    if (!j.is_object()) throw ParseError(path, "expected object");
    out.clear();
    for (const auto &[key, value] : j.items()) {
        auto kind = enum_from_string<SectionKind>(key);
        if (!kind) throw ParseError(json_io::join_path(path, key), "unknown section kind");
        out[*kind] = json_io::as_string(value, json_io::join_path(path, key));
    }
}

inline Json write(const RockCharacteristics &r) {
    Json j;
    j["rock_type"] = to_string(r.rock_type);
    j["rock_name"] = r.rock_name;
    j["matrix"] = r.matrix;
    j["texture"] = r.texture;
    j["mineralogy"] = r.mineralogy;
    j["grain_size"] = r.grain_size;
    j["color"] = r.color;
    j["geology"] = r.geology;
    j["main_structures"] = r.main_structures;
    j["mass_quality"] = r.mass_quality;
    j["joint_description"] = r.joint_description;
    return j;
}

inline void read(const Json &j, const std::string &path, RockCharacteristics &out) {
    using namespace json_io;
    out.rock_type = get_enum<RockType>(j, "rock_type", path);
    out.rock_name = get_string_or(j, "rock_name", path);
    out.matrix = get_string_or(j, "matrix", path);
    out.texture = get_string_or(j, "texture", path);
    out.mineralogy = get_string_or(j, "mineralogy", path);
    out.grain_size = get_string_or(j, "grain_size", path);
    out.color = get_string_or(j, "color", path);
    out.geology = get_string_or(j, "geology", path);
    out.main_structures = get_string_or(j, "main_structures", path);
    out.mass_quality = get_string_or(j, "mass_quality", path);
    out.joint_description = get_string_or(j, "joint_description", path);
}

inline Json write(const JointSet &s) {
    Json j;
    j["set_label"] = s.set_label;
    j["dip_direction"] = s.dip_direction;
    j["dip"] = s.dip;
    j["count"] = s.count;
    return j;
}

inline void read(const Json &j, const std::string &path, JointSet &out) {
    using namespace json_io;
    out.set_label = get_string(j, "set_label", path);
    out.dip_direction = get_number(j, "dip_direction", path);
    out.dip = get_number(j, "dip", path);
    out.count = optional(j, "count") ? static_cast<int>(get_integer(j, "count", path)) : 1;
}

inline Json write(const ImageRef &img) {
    Json j;
    j["id"] = img.id;
    j["role"] = to_string(img.role);
    j["media_type"] = img.media_type;
    j["byte_length"] = img.byte_length;
    j["storage_key"] = img.storage_key;
    return j;
}

inline void read(const Json &j, const std::string &path, ImageRef &out) {
    using namespace json_io;
    out.id = get_string(j, "id", path);
    out.role = get_enum<ImageRole>(j, "role", path);
    out.media_type = get_string(j, "media_type", path);
    long long len = get_integer(j, "byte_length", path);
    if (len < 0) throw ParseError(join_path(path, "byte_length"), "negative");
    out.byte_length = static_cast<std::uint64_t>(len);
    out.storage_key = get_string_or(j, "storage_key", path);
}

template <class T> Json write_list(const std::vector<T> &items) {
    Json arr = Json::array();
    for (const auto &item : items) arr.push_back(write(item));
    return arr;
}

template <class T> void read_list(const Json &arr, const std::string &path, std::vector<T> &out) {
    if (!arr.is_array()) throw ParseError(path, "expected array");
    out.clear();
    out.resize(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) read(arr[i], json_io::index_path(path, i), out[i]);
}

inline Json write(const Outcrop &o) {
    Json j;
    j["id"] = o.id;
    j["coordinates"] = Json{{"x", o.coordinates.x}, {"y", o.coordinates.y}, {"z", o.coordinates.z}};
    j["crs"] = o.crs;
    j["rock"] = write(o.rock);
    j["joint_sets"] = write_list(o.joint_sets);
    j["images"] = write_list(o.images);
    j["rmr_input"] = o.rmr_input ? write(*o.rmr_input) : Json(nullptr);
    j["schmidt"] = o.schmidt ? write(*o.schmidt) : Json(nullptr);
    j["slope"] = o.slope ? write(*o.slope) : Json(nullptr);
    j["generated"] = write(o.generated);
    return j;
}

inline void read(const Json &j, const std::string &path, Outcrop &out) {
    using namespace json_io;
    out.id = static_cast<int>(get_integer(j, "id", path));
    const Json &c = require(j, "coordinates", path);
    const std::string cpath = join_path(path, "coordinates");
    out.coordinates = {get_number(c, "x", cpath), get_number(c, "y", cpath), get_number(c, "z", cpath)};
    out.crs = get_string_or(j, "crs", path);
    read(require(j, "rock", path), join_path(path, "rock"), out.rock);
    out.joint_sets.clear();
    if (const Json *v = optional(j, "joint_sets")) read_list(*v, join_path(path, "joint_sets"), out.joint_sets);
    out.images.clear();
    if (const Json *v = optional(j, "images")) read_list(*v, join_path(path, "images"), out.images);
    out.rmr_input.reset();
    if (const Json *v = optional(j, "rmr_input")) read(*v, join_path(path, "rmr_input"), out.rmr_input.emplace());
    out.schmidt.reset();
    if (const Json *v = optional(j, "schmidt")) read(*v, join_path(path, "schmidt"), out.schmidt.emplace());
    out.slope.reset();
    if (const Json *v = optional(j, "slope")) read(*v, join_path(path, "slope"), out.slope.emplace());
    out.generated.clear();
    if (const Json *v = optional(j, "generated")) read(*v, join_path(path, "generated"), out.generated);
}

inline Json write(const Project &p) {
    Json j;
    j["title"] = p.title;
    j["location"] = p.location;
    j["university"] = p.university;
    j["faculty"] = p.faculty;
    j["program"] = p.program;
    j["course"] = p.course;
    j["authors"] = p.authors;
    j["date"] = p.date;
    j["outcrops"] = write_list(p.outcrops);
    j["generated"] = write(p.generated);
    return j;
}

inline void read(const Json &j, const std::string &path, Project &out) {
    using namespace json_io;
    out.title = get_string(j, "title", path);
    out.location = get_string_or(j, "location", path);
    out.university = get_string_or(j, "university", path);
    out.faculty = get_string_or(j, "faculty", path);
    out.program = get_string_or(j, "program", path);
    out.course = get_string_or(j, "course", path);
    out.authors.clear();
    if (const Json *a = optional(j, "authors")) {
        if (!a->is_array()) throw ParseError(join_path(path, "authors"), "expected array");
        for (std::size_t i = 0; i < a->size(); ++i)
            out.authors.push_back(as_string((*a)[i], index_path(join_path(path, "authors"), i)));
    }
    out.date = get_string_or(j, "date", path);
    out.outcrops.clear();
    if (const Json *v = optional(j, "outcrops")) read_list(*v, join_path(path, "outcrops"), out.outcrops);
    out.generated.clear();
    if (const Json *v = optional(j, "generated")) read(*v, join_path(path, "generated"), out.generated);
}

// Parse a whole document; errors carry a JSONPath-like location rooted at "$".
template <class T> T parse_as(const Json &j, const std::string &root = "$") {
    T out{};
    read(j, root, out);
    return out;
}

template <class T> T parse_text_as(std::string_view text, const std::string &root = "$") {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError(root, e.what());
    }
    return parse_as<T>(j, root);
}

inline std::string to_canonical_json(const Project &p) { return write(p).dump(2); }

} // namespace georeport
