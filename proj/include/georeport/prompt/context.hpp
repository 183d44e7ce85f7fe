#pragma once

// Slot values for each section, built from the project's field data.
// Outcrop data is written as a labeled "clave: valor" block per outcrop.

#include <string>
#include <vector>

#include <fmt/format.h>

#include "georeport/core/domain.hpp"
#include "georeport/geomech/charts.hpp"
#include "georeport/geomech/rmr.hpp"
#include "georeport/geomech/schmidt.hpp"
#include "georeport/geomech/smr.hpp"
#include "georeport/prompt/render.hpp"

namespace georeport::prompt {

inline std::string rock_type_es(RockType t) {
    switch (t) {
    case RockType::igneous: return "ígnea";
    case RockType::sedimentary: return "sedimentaria";
    case RockType::metamorphic: return "metamórfica";
    }
    return {};
}

inline std::string format_number(double v, int decimals = 2) {
    return fmt::format("{:.{}f}", v, decimals);
}

namespace context_detail {

inline void line(std::string &out, std::string_view label, const std::string &value) {
    if (value.find_first_not_of(" \t\r\n") == std::string::npos) return;
    out += fmt::format("- {}: {}\n", label, value);
}

inline std::string joint_sets(const Outcrop &o) {
    std::string s;
    for (const auto &j : o.joint_sets) {
        if (!s.empty()) s += "; ";
        s += fmt::format("{} {:g}/{:g} ({} {})", j.set_label, j.dip_direction, j.dip, j.count,
                         j.count == 1 ? "medida" : "medidas");
    }
    return s;
}

inline std::string generated(const Outcrop &o, SectionKind k) {
    auto it = o.generated.find(k);
    return it == o.generated.end() ? std::string{} : it->second;
}

} // namespace context_detail

// Field observations of one outcrop, plus any image descriptions already generated.
inline std::string outcrop_block(const Outcrop &o) {
    using context_detail::line;
    const auto &r = o.rock;
    std::string s = fmt::format("Afloramiento {}\n", o.id);
    line(s, "Coordenadas (x, y, z)",
         fmt::format("{:.2f}, {:.2f}, {:.2f}{}", o.coordinates.x, o.coordinates.y, o.coordinates.z,
                     o.crs.empty() ? "" : " (" + o.crs + ")"));
    line(s, "Tipo de roca", rock_type_es(r.rock_type));
    line(s, "Nombre de la roca", r.rock_name);
    line(s, "Geología", r.geology);
    line(s, "Color predominante", r.color);
    line(s, "Matriz", r.matrix);
    line(s, "Textura", r.texture);
    line(s, "Mineralogía", r.mineralogy);
    line(s, "Tamaño de grano", r.grain_size);
    line(s, "Estructuras principales", r.main_structures);
    line(s, "Calidad del macizo", r.mass_quality);
    line(s, "Descripción de juntas", r.joint_description);
    line(s, "Familias de juntas", context_detail::joint_sets(o));
    line(s, "Descripción del afloramiento", context_detail::generated(o, SectionKind::outcrop_description));
    line(s, "Descripción de la muestra de mano", context_detail::generated(o, SectionKind::hand_sample_description));
    return s;
}

inline std::string outcrop_data(const Project &p) {
    std::string s;
    for (const auto &o : p.outcrops) {
        if (!s.empty()) s += "\n";
        s += outcrop_block(o);
    }
    if (!s.empty()) s.pop_back();
    return s;
}

// Outcrop blocks extended with the computed indices (RMR, SMR per joint set,
// Schmidt results and their interpretation).
inline std::string analysis_data(const Project &p, const geomech::RatingTables &tables) {
    using context_detail::line;
    std::string s;
    for (const auto &o : p.outcrops) {
        if (!s.empty()) s += "\n";
        s += outcrop_block(o);
        if (o.rmr_input) {
            auto rmr = geomech::compute_rmr(*o.rmr_input, tables);
            line(s, "RMR básico", fmt::format("{} (clase {}, {})", rmr.basic_total, rmr.rmr_class.label,
                                              rmr.rmr_class.description));
            if (o.rmr_input->orientation_adjustment != 0)
                line(s, "RMR ajustado", fmt::format("{}", rmr.adjusted_total));
        }
        for (const auto &j : geomech::outcrop_smr(o, tables))
            line(s, "SMR " + j.set_label,
                 fmt::format("{} (clase {}, {})", format_number(j.smr.smr_total), j.smr.smr_class.label,
                             j.smr.smr_class.description));
        if (o.schmidt) {
            auto sr = geomech::schmidt_summary(*o.schmidt, tables.schmidt);
            line(s, "UCS media (esclerómetro)", format_number(sr.ucs_mean_mpa) + " MPa");
            line(s, "Módulo de Young (E)", format_number(sr.young_modulus_mpa, 0) + " MPa");
        }
        line(s, "Interpretación del esclerómetro", context_detail::generated(o, SectionKind::schmidt_interpretation));
    }
    if (!s.empty()) s.pop_back();
    return s;
}

inline SlotValues schmidt_slots(const geomech::SchmidtTest &test, const geomech::SchmidtResult &r) {
    return {
        {"method", test.method},
        {"hr_mean_top10", format_number(r.hr_mean_top10)},
        {"hr_median_top10", format_number(r.hr_median_top10)},
        {"unit_weight", format_number(test.unit_weight_kn_m3) + " kN/m³"},
        {"ucs_mean", format_number(r.ucs_mean_mpa) + " MPa"},
        {"ucs_median", format_number(r.ucs_median_mpa) + " MPa"},
        {"young_modulus", format_number(r.young_modulus_mpa, 0) + " MPa"},
    };
}

// Slot values for `kind`. Upstream texts (stage-1 outputs, discussion) come from
// project.generated; when absent the slot is left out and rendering reports it.
inline SlotValues section_context(SectionKind kind, const Project &p, const Outcrop *outcrop,
                                  const geomech::RatingTables &tables) {
    auto generated = [&](SectionKind k) -> std::string {
        auto it = p.generated.find(k);
        return it == p.generated.end() ? std::string{} : it->second;
    };
    SlotValues v;
    switch (kind) {
    case SectionKind::objectives: v["title"] = p.title; break;
    case SectionKind::introduction_stage1: v["outcrop_data"] = outcrop_data(p); break;
    case SectionKind::introduction_stage2:
        v["outcrop_data"] = outcrop_data(p);
        v["introduction_stage1"] = generated(SectionKind::introduction_stage1);
        break;
    case SectionKind::outcrop_description:
    case SectionKind::hand_sample_description:
    case SectionKind::preliminary: break;
    case SectionKind::schmidt_interpretation:
        if (!outcrop) throw DependencyError("schmidt_interpretation needs an outcrop");
        if (!outcrop->schmidt)
            throw DependencyError("outcrop " + std::to_string(outcrop->id) + " has no Schmidt hammer test");
        v = schmidt_slots(*outcrop->schmidt, geomech::schmidt_summary(*outcrop->schmidt, tables.schmidt));
        break;
    case SectionKind::discussion_stage1: v["analysis_data"] = analysis_data(p, tables); break;
    case SectionKind::discussion_stage2:
        v["analysis_data"] = analysis_data(p, tables);
        v["discussion_stage1"] = generated(SectionKind::discussion_stage1);
        break;
    case SectionKind::conclusions: {
        v["analysis_data"] = analysis_data(p, tables);
        auto d = generated(SectionKind::discussion_stage2);
        v["discussion"] = d.empty() ? generated(SectionKind::discussion_stage1) : d;
        break;
    }
    }
    return v;
}

} // namespace georeport::prompt
