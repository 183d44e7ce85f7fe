#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "georeport/core/enum_names.hpp"

// Field-entered inputs for the deterministic geomechanics (RMR, SMR, Schmidt).
// Kept free of behaviour so the domain model can embed them.
namespace georeport::geomech {

enum class Roughness { very_rough, rough, slightly_rough, smooth, slickensided };
enum class Infilling { none, hard_lt5mm, hard_gt5mm, soft_lt5mm, soft_gt5mm };
enum class Weathering { unweathered, slightly, moderately, highly, decomposed };
enum class Groundwater { dry, damp, wet, dripping, flowing };

struct RmrInput {
    int n_joint_families = 0;
    double ucs_mpa = 0;       // MPa
    double rqd_pct = 0;       // percent
    double spacing_m = 0;     // m
    double persistence_m = 0; // m, continuity
    double aperture_mm = 0;   // mm
    Roughness roughness = Roughness::smooth;
    Infilling infilling = Infilling::none;
    Weathering weathering = Weathering::moderately;
    Groundwater groundwater = Groundwater::dry;
    int orientation_adjustment = 0; // [-60, 0]

    friend bool operator==(const RmrInput &, const RmrInput &) = default;
};

enum class FailureMode { planar, toppling, wedge };
enum class Excavation { natural, presplitting, smooth_blasting, normal_blasting, deficient_blasting, mechanical };

// Slope face geometry recorded per outcrop so SMR can be evaluated against its joint sets.
struct SlopeGeometry {
    double dip_direction = 0;
    double dip = 0;
    FailureMode failure_mode = FailureMode::planar;
    Excavation excavation = Excavation::mechanical;

    friend bool operator==(const SlopeGeometry &, const SlopeGeometry &) = default;
};

// For wedge failure the joint angles are the trend/plunge of the intersection line.
struct SmrInput {
    int rmr_basic = 0;
    double joint_dip_direction = 0;
    double joint_dip = 0;
    double slope_dip_direction = 0;
    double slope_dip = 0;
    FailureMode failure_mode = FailureMode::planar;
    Excavation excavation = Excavation::mechanical;

    friend bool operator==(const SmrInput &, const SmrInput &) = default;
};

struct SchmidtTest {
    std::string method;            // free-text label, stored verbatim
    std::vector<double> readings;  // rebound numbers HR
    double unit_weight_kn_m3 = 0;  // kN/m3
    double modulus_ratio = 300;

    friend bool operator==(const SchmidtTest &, const SchmidtTest &) = default;
};

} // namespace georeport::geomech

namespace georeport {

template <> struct EnumNames<geomech::Roughness> {
    static constexpr std::array<std::pair<geomech::Roughness, std::string_view>, 5> names{{
        {geomech::Roughness::very_rough, "very_rough"},
        {geomech::Roughness::rough, "rough"},
        {geomech::Roughness::slightly_rough, "slightly_rough"},
        {geomech::Roughness::smooth, "smooth"},
        {geomech::Roughness::slickensided, "slickensided"},
    }};
};

template <> struct EnumNames<geomech::Infilling> {
    static constexpr std::array<std::pair<geomech::Infilling, std::string_view>, 5> names{{
        {geomech::Infilling::none, "none"},
        {geomech::Infilling::hard_lt5mm, "hard_lt5mm"},
        {geomech::Infilling::hard_gt5mm, "hard_gt5mm"},
        {geomech::Infilling::soft_lt5mm, "soft_lt5mm"},
        {geomech::Infilling::soft_gt5mm, "soft_gt5mm"},
    }};
};

template <> struct EnumNames<geomech::Weathering> {
    static constexpr std::array<std::pair<geomech::Weathering, std::string_view>, 5> names{{
        {geomech::Weathering::unweathered, "unweathered"},
        {geomech::Weathering::slightly, "slightly"},
        {geomech::Weathering::moderately, "moderately"},
        {geomech::Weathering::highly, "highly"},
        {geomech::Weathering::decomposed, "decomposed"},
    }};
};

template <> struct EnumNames<geomech::Groundwater> {
    static constexpr std::array<std::pair<geomech::Groundwater, std::string_view>, 5> names{{
        {geomech::Groundwater::dry, "dry"},
        {geomech::Groundwater::damp, "damp"},
        {geomech::Groundwater::wet, "wet"},
        {geomech::Groundwater::dripping, "dripping"},
        {geomech::Groundwater::flowing, "flowing"},
    }};
};

template <> struct EnumNames<geomech::FailureMode> {
    static constexpr std::array<std::pair<geomech::FailureMode, std::string_view>, 3> names{{
        {geomech::FailureMode::planar, "planar"},
        {geomech::FailureMode::toppling, "toppling"},
        {geomech::FailureMode::wedge, "wedge"},
    }};
};

template <> struct EnumNames<geomech::Excavation> {
    static constexpr std::array<std::pair<geomech::Excavation, std::string_view>, 6> names{{
        {geomech::Excavation::natural, "natural"},
        {geomech::Excavation::presplitting, "presplitting"},
        {geomech::Excavation::smooth_blasting, "smooth_blasting"},
        {geomech::Excavation::normal_blasting, "normal_blasting"},
        {geomech::Excavation::deficient_blasting, "deficient_blasting"},
        {geomech::Excavation::mechanical, "mechanical"},
    }};
};

} // namespace georeport
