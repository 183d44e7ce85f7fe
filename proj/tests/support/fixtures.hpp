#pragma once

#include <string>

#include "georeport/core/domain.hpp"
#include "georeport/geomech/rating_tables.hpp"

namespace georeport::testing {

inline std::string data_dir() { return GEOREPORT_DATA_DIR; }
inline std::string fixture_dir() { return GEOREPORT_FIXTURE_DIR; }

inline const geomech::RatingTables &tables() {
    static const geomech::RatingTables t = geomech::load_rating_tables(data_dir() + "/rating_tables.json");
    return t;
}

inline geomech::RmrInput worked_rmr_input() {
    geomech::RmrInput in;
    in.n_joint_families = 3;
    in.ucs_mpa = 120;
    in.rqd_pct = 55;
    in.spacing_m = 0.3;
    in.persistence_m = 2;
    in.aperture_mm = 0.05;
    in.roughness = geomech::Roughness::rough;
    in.infilling = geomech::Infilling::none;
    in.weathering = geomech::Weathering::slightly;
    in.groundwater = geomech::Groundwater::damp;
    in.orientation_adjustment = 0;
    return in;
}

inline geomech::RmrInput best_rmr_input() {
    geomech::RmrInput in;
    in.n_joint_families = 1;
    in.ucs_mpa = 300;
    in.rqd_pct = 100;
    in.spacing_m = 3;
    in.persistence_m = 0.5;
    in.aperture_mm = 0;
    in.roughness = geomech::Roughness::very_rough;
    in.infilling = geomech::Infilling::none;
    in.weathering = geomech::Weathering::unweathered;
    in.groundwater = geomech::Groundwater::dry;
    return in;
}

inline Outcrop make_outcrop(int id, RockType type = RockType::sedimentary) {
    Outcrop o;
    o.id = id;
    o.coordinates = {778500.0 + id * 10.0, 9976400.0 + id * 5.0, 2800.0 + id};
    o.crs = "WGS84 / UTM 17S";
    o.rock.rock_type = type;
    o.rock.rock_name = type == RockType::igneous ? "Andesita" : type == RockType::metamorphic ? "Esquisto" : "Arenisca";
    o.rock.matrix = "Arcillosa";
    o.rock.texture = "Clástica";
    o.rock.mineralogy = "Cuarzo, feldespato";
    o.rock.grain_size = "Medio";
    o.rock.color = "Gris claro";
    o.rock.geology = "Formación volcano-sedimentaria";
    o.rock.main_structures = "Estratificación y diaclasas";
    o.rock.mass_quality = "Media";
    o.rock.joint_description = "Tres familias de juntas subverticales";
    o.joint_sets = {{"J1", 135, 60, 12}, {"J2", 40, 75, 8}, {"J3", 250, 20, 5}};
    o.images = {{"img-" + std::to_string(id) + "-a", ImageRole::outcrop, "image/jpeg", 1024, "sha256-a" + std::to_string(id)},
                {"img-" + std::to_string(id) + "-b", ImageRole::hand_sample, "image/jpeg", 2048,
                 "sha256-b" + std::to_string(id)}};
    auto rmr = worked_rmr_input();
    rmr.ucs_mpa = 60.0 + 30.0 * id;
    o.rmr_input = rmr;
    geomech::SchmidtTest s;
    s.method = "ISRM";
    for (int i = 0; i < 12; ++i) s.readings.push_back(30 + (i * 7 + id) % 15);
    s.unit_weight_kn_m3 = 26;
    s.modulus_ratio = 300;
    o.schmidt = s;
    o.slope = geomech::SlopeGeometry{140, 70, geomech::FailureMode::planar, geomech::Excavation::natural};
    return o;
}

inline Project make_project(int n_outcrops = 1) {
    Project p;
    p.title = "Caracterización geotécnica del sector X";
    p.location = "Quito, Ecuador";
    p.university = "Universidad Central del Ecuador";
    p.faculty = "Facultad de Ingeniería en Geología, Minas, Petróleos y Ambiental";
    p.program = "Geología";
    p.course = "Mecánica de Rocas";
    p.authors = {"A. Autor", "B. Autora"};
    p.date = "2025-06-30";
    static constexpr RockType types[] = {RockType::sedimentary, RockType::igneous, RockType::metamorphic};
    for (int i = 1; i <= n_outcrops; ++i) p.outcrops.push_back(make_outcrop(i, types[(i - 1) % 3]));
    return p;
}

} // namespace georeport::testing
