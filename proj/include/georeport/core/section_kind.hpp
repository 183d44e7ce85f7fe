#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "georeport/core/enum_names.hpp"

namespace georeport {

// One entry per prompt in the catalog. Declaration order is the dispatch order
// of a full report; `preliminary` is the stand-alone image-description probe
// and never part of a report.
enum class SectionKind {
    objectives,
    introduction_stage1,
    introduction_stage2,
    outcrop_description,
    hand_sample_description,
    schmidt_interpretation,
    discussion_stage1,
    discussion_stage2,
    conclusions,
    preliminary,
};

inline constexpr std::array<SectionKind, 10> all_section_kinds{
    SectionKind::objectives,          SectionKind::introduction_stage1,     SectionKind::introduction_stage2,
    SectionKind::outcrop_description, SectionKind::hand_sample_description, SectionKind::schmidt_interpretation,
    SectionKind::discussion_stage1,   SectionKind::discussion_stage2,       SectionKind::conclusions,
    SectionKind::preliminary,
};

// Sections generated once per outcrop (text stored on the Outcrop).
constexpr bool is_per_outcrop(SectionKind k) {
    return k == SectionKind::outcrop_description || k == SectionKind::hand_sample_description ||
           k == SectionKind::schmidt_interpretation;
}

} // namespace georeport

namespace georeport {
template <> struct EnumNames<SectionKind> {
    static constexpr std::array<std::pair<SectionKind, std::string_view>, 10> names{{
        {SectionKind::objectives, "objectives"},
        {SectionKind::introduction_stage1, "introduction_stage1"},
        {SectionKind::introduction_stage2, "introduction_stage2"},
        {SectionKind::outcrop_description, "outcrop_description"},
        {SectionKind::hand_sample_description, "hand_sample_description"},
        {SectionKind::schmidt_interpretation, "schmidt_interpretation"},
        {SectionKind::discussion_stage1, "discussion_stage1"},
        {SectionKind::discussion_stage2, "discussion_stage2"},
        {SectionKind::conclusions, "conclusions"},
        {SectionKind::preliminary, "preliminary"},
    }};
};
} // namespace georeport
