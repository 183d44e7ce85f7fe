#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "georeport/core/enum_names.hpp"
#include "georeport/core/section_kind.hpp"
#include "georeport/geomech/inputs.hpp"

namespace georeport {

enum class RockType { igneous, sedimentary, metamorphic };

template <> struct EnumNames<RockType> {
    static constexpr std::array<std::pair<RockType, std::string_view>, 3> names{{
        {RockType::igneous, "igneous"},
        {RockType::sedimentary, "sedimentary"},
        {RockType::metamorphic, "metamorphic"},
    }};
};

enum class ImageRole { outcrop, hand_sample };

template <> struct EnumNames<ImageRole> {
    static constexpr std::array<std::pair<ImageRole, std::string_view>, 2> names{{
        {ImageRole::outcrop, "outcrop"},
        {ImageRole::hand_sample, "hand_sample"},
    }};
};

struct Coordinates {
    double x = 0; // m
    double y = 0; // m
    double z = 0; // m
    friend bool operator==(const Coordinates &, const Coordinates &) = default;
};

// Free text throughout: no controlled vocabulary is imposed on field descriptions.
struct RockCharacteristics {
    RockType rock_type = RockType::sedimentary;
    std::string rock_name;
    std::string matrix;
    std::string texture;
    std::string mineralogy;
    std::string grain_size;
    std::string color;
    std::string geology;
    std::string main_structures;
    std::string mass_quality;
    std::string joint_description;
    friend bool operator==(const RockCharacteristics &, const RockCharacteristics &) = default;
};

struct JointSet {
    std::string set_label;
    double dip_direction = 0; // [0, 360)
    double dip = 0;           // [0, 90]
    int count = 1;            // measurements
    friend bool operator==(const JointSet &, const JointSet &) = default;
};

struct ImageRef {
    std::string id;
    ImageRole role = ImageRole::outcrop;
    std::string media_type;
    std::uint64_t byte_length = 0;
    std::string storage_key;
    friend bool operator==(const ImageRef &, const ImageRef &) = default;
};

using GeneratedTexts = std::map<SectionKind, std::string>;

struct Outcrop {
    int id = 0;
    Coordinates coordinates;
    std::string crs; // reference-system label, recorded as entered
    RockCharacteristics rock;
    std::vector<JointSet> joint_sets;
    std::vector<ImageRef> images;
    std::optional<geomech::RmrInput> rmr_input;
    std::optional<geomech::SchmidtTest> schmidt;
    std::optional<geomech::SlopeGeometry> slope;
    GeneratedTexts generated; // per-outcrop sections only

    // First image with the given role, if any.
    const ImageRef *image(ImageRole role) const {
        for (const auto &img : images)
            if (img.role == role) return &img;
        return nullptr;
    }

    friend bool operator==(const Outcrop &, const Outcrop &) = default;
};

struct Project {
    std::string title;
    std::string location;
    std::string university;
    std::string faculty;
    std::string program;
    std::string course;
    std::vector<std::string> authors;
    std::string date; // ISO-8601 YYYY-MM-DD
    std::vector<Outcrop> outcrops;
    GeneratedTexts generated; // global sections (introduction, discussion, conclusions...)

    Outcrop *find_outcrop(int outcrop_id) {
        for (auto &o : outcrops)
            if (o.id == outcrop_id) return &o;
        return nullptr;
    }
    const Outcrop *find_outcrop(int outcrop_id) const {
        for (const auto &o : outcrops)
            if (o.id == outcrop_id) return &o;
        return nullptr;
    }

    friend bool operator==(const Project &, const Project &) = default;
};

} // namespace georeport
