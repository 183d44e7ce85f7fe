#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "georeport/core/csv.hpp"
#include "georeport/core/rock_names.hpp"

namespace georeport::store {

struct DatasetRow {
    std::string id; // "Sedimentaria 1"
    RockType rock_type = RockType::sedimentary;
    std::string geology;
    std::string color;
    std::string main_structures;
    std::string mass_quality;
    std::string joint_description;
    friend bool operator==(const DatasetRow &, const DatasetRow &) = default;
};

// Header names for each field; the defaults are the documented CSV header.
struct DatasetColumns {
    std::string id = "id";
    std::string rock_type = "rock_type";
    std::string geology = "geology";
    std::string color = "color";
    std::string main_structures = "main_structures";
    std::string mass_quality = "mass_quality";
    std::string joint_description = "joint_description";
};

// Class name in front of the trailing number: "Ígnea 3" -> igneous.
inline std::optional<RockType> rock_type_from_id(std::string_view id) {
    auto end = id.find_last_not_of("0123456789");
    if (end == std::string_view::npos) return std::nullopt;
    auto prefix = id.substr(0, end + 1);
    auto last = prefix.find_last_not_of(" \t_-");
    if (last == std::string_view::npos) return std::nullopt;
    return parse_rock_type(prefix.substr(0, last + 1));
}

inline std::vector<DatasetRow> parse_dataset(std::string_view text, const DatasetColumns &cols = {},
                                             const std::string &source = "<csv>") {
    auto records = csv::parse(text, source);
    if (records.empty()) throw SchemaError(cols.id);
    const auto &header = records.front();
    const std::size_t c_id = csv::column(header, cols.id), c_type = csv::column(header, cols.rock_type),
                      c_geo = csv::column(header, cols.geology), c_color = csv::column(header, cols.color),
                      c_struct = csv::column(header, cols.main_structures),
                      c_quality = csv::column(header, cols.mass_quality),
                      c_joints = csv::column(header, cols.joint_description);

    std::vector<DatasetRow> rows;
    std::set<std::string> ids;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto &r = records[i];
        const auto where = source + ":" + std::to_string(i + 1);
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() != header.size())
            throw ParseError(where, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(r.size()));
        DatasetRow row;
        row.id = r[c_id];
        auto from_id = rock_type_from_id(row.id);
        if (!from_id) throw IntegrityError(where + ": id '" + row.id + "' does not start with a rock class");
        auto declared = parse_rock_type(r[c_type]);
        if (!declared) throw IntegrityError(where + ": unknown rock type '" + r[c_type] + "'");
        if (*declared != *from_id)
            throw IntegrityError(where + ": id '" + row.id + "' disagrees with rock type '" + r[c_type] + "'");
        if (!ids.insert(row.id).second) throw IntegrityError(where + ": duplicate id '" + row.id + "'");
        row.rock_type = *from_id;
        row.geology = r[c_geo];
        row.color = r[c_color];
        row.main_structures = r[c_struct];
        row.mass_quality = r[c_quality];
        row.joint_description = r[c_joints];
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<DatasetRow> load_dataset(const std::string &path, const DatasetColumns &cols = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dataset(ss.str(), cols, path);
}

inline std::map<RockType, int> class_counts(const std::vector<DatasetRow> &rows) {
    std::map<RockType, int> counts{{RockType::igneous, 0}, {RockType::sedimentary, 0}, {RockType::metamorphic, 0}};
    for (const auto &r : rows) ++counts[r.rock_type];
    return counts;
}

} // namespace georeport::store
