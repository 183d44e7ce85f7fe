#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "georeport/core/validate.hpp"
#include "georeport/geomech/charts.hpp"
#include "georeport/geomech/rmr.hpp"
#include "georeport/geomech/schmidt.hpp"
#include "georeport/prompt/context.hpp"
#include "georeport/report/document.hpp"
#include "georeport/report/text_blocks.hpp"

namespace georeport::report {

namespace labels {

inline std::string roughness(geomech::Roughness r) {
    using geomech::Roughness;
    switch (r) {
    case Roughness::very_rough: return "Muy rugosa";
    case Roughness::rough: return "Rugosa";
    case Roughness::slightly_rough: return "Ligeramente rugosa";
    case Roughness::smooth: return "Lisa";
    case Roughness::slickensided: return "Espejo de falla";
    }
    return {};
}

inline std::string infilling(geomech::Infilling i) {
    using geomech::Infilling;
    switch (i) {
    case Infilling::none: return "Ninguno";
    case Infilling::hard_lt5mm: return "Duro < 5 mm";
    case Infilling::hard_gt5mm: return "Duro > 5 mm";
    case Infilling::soft_lt5mm: return "Blando < 5 mm";
    case Infilling::soft_gt5mm: return "Blando > 5 mm";
    }
    return {};
}

inline std::string weathering(geomech::Weathering w) {
    using geomech::Weathering;
    switch (w) {
    case Weathering::unweathered: return "Inalterada";
    case Weathering::slightly: return "Ligeramente alterada";
    case Weathering::moderately: return "Moderadamente alterada";
    case Weathering::highly: return "Muy alterada";
    case Weathering::decomposed: return "Descompuesta";
    }
    return {};
}

inline std::string groundwater(geomech::Groundwater g) {
    using geomech::Groundwater;
    switch (g) {
    case Groundwater::dry: return "Completamente seco";
    case Groundwater::damp: return "Ligeramente húmedo";
    case Groundwater::wet: return "Húmedo";
    case Groundwater::dripping: return "Goteando";
    case Groundwater::flowing: return "Fluyendo";
    }
    return {};
}

} // namespace labels

namespace assemble_detail {

inline std::string num(double v) { return fmt::format("{:g}", v); }

inline Block table_block(std::string id, std::string subheading, Table t, std::optional<int> outcrop = std::nullopt) {
    Block b;
    b.id = std::move(id);
    b.type = BlockType::table;
    b.subheading = std::move(subheading);
    b.table = std::move(t);
    b.outcrop_id = outcrop;
    return b;
}

inline Block figure_block(std::string id, Figure f, int outcrop, std::string subheading = {}) {
    Block b;
    b.id = std::move(id);
    b.type = BlockType::figure;
    b.subheading = std::move(subheading);
    b.figure = std::move(f);
    b.outcrop_id = outcrop;
    return b;
}

inline const std::string *find_text(const GeneratedTexts &g, SectionKind k) {
    auto it = g.find(k);
    if (it == g.end() || trim(it->second).empty()) return nullptr;
    return &it->second;
}

inline ReportSection make_section(DocumentPart p, bool editable) {
    ReportSection s;
    s.part = p;
    s.heading = std::string(heading_of(p));
    s.editable = editable;
    return s;
}

} // namespace assemble_detail

inline ReportSection cover_section(const Project &p) {
    auto s = assemble_detail::make_section(DocumentPart::cover, false);
    Block b;
    b.id = "cover.fields";
    b.type = BlockType::fields;
    std::string authors;
    for (const auto &a : p.authors) authors += (authors.empty() ? "" : ", ") + a;
    b.fields = {{"Universidad", p.university}, {"Facultad", p.faculty}, {"Carrera", p.program},
                {"Título", p.title},           {"Ubicación", p.location}, {"Asignatura", p.course},
                {"Autores", authors},          {"Fecha", p.date}};
    s.blocks.push_back(std::move(b));
    return s;
}

// Generated single-text section; the stage-2 text wins over stage 1.
inline ReportSection text_section(const Project &p, DocumentPart part, SectionKind stage1, SectionKind stage2,
                                  std::vector<std::string> &gaps) {
    auto s = assemble_detail::make_section(part, true);
    SectionKind used = stage2;
    const std::string *text = assemble_detail::find_text(p.generated, stage2);
    if (!text) {
        used = stage1;
        text = assemble_detail::find_text(p.generated, stage1);
    }
    if (!text) {
        gaps.emplace_back(to_string(stage2));
        return s;
    }
    s.blocks = paragraphs_from_text(std::string(to_string(part)), *text, used, std::nullopt, s.warnings);
    return s;
}

inline std::vector<Block> objectives_blocks(const std::string &text, std::vector<std::string> &warnings) {
    auto o = parse_objectives(text);
    std::vector<Block> out;
    out.push_back(paragraph_block("objectives.general", o.general, SectionKind::objectives, std::nullopt,
                                  "2.1 Objetivo general"));
    out.push_back(paragraph_block("objectives.specific1", o.specific[0], SectionKind::objectives, std::nullopt,
                                  "2.2 Objetivos específicos"));
    out.push_back(paragraph_block("objectives.specific2", o.specific[1], SectionKind::objectives));
    for (const auto &b : out)
        if (auto w = word_limit_warning(b.id, b.text)) warnings.push_back(*w);
    return out;
}

inline Block conclusions_block(const std::string &text, std::vector<std::string> &warnings) {
    Block b;
    b.id = "conclusions.list";
    b.type = BlockType::numbered_list;
    b.items = parse_conclusions(text);
    b.source = SectionKind::conclusions;
    for (std::size_t i = 0; i < b.items.size(); ++i)
        if (auto w = word_limit_warning(b.id + "[" + std::to_string(i + 1) + "]", b.items[i])) warnings.push_back(*w);
    return b;
}

inline ReportSection objectives_section(const Project &p, std::vector<std::string> &gaps) {
    auto s = assemble_detail::make_section(DocumentPart::objectives, true);
    const auto *text = assemble_detail::find_text(p.generated, SectionKind::objectives);
    if (!text) {
        gaps.emplace_back("objectives");
        return s;
    }
    s.blocks = objectives_blocks(*text, s.warnings);
    return s;
}

inline Json stereonet_data(const Outcrop &o) {
    Json poles = Json::array();
    for (const auto &lp : geomech::stereonet_poles(o))
        poles.push_back(Json{{"label", lp.set_label},
                             {"trend", lp.point.trend},
                             {"plunge", lp.point.plunge},
                             {"x", lp.point.x},
                             {"y", lp.point.y}});
    return Json{{"projection", "equal_area"}, {"hemisphere", "lower"}, {"poles", std::move(poles)}};
}

inline Json bar_data(const Outcrop &o) {
    Json bars = Json::array();
    for (const auto &b : geomech::joint_bar_data(o)) bars.push_back(Json{{"label", b.set_label}, {"count", b.count}});
    return Json{{"x", "set_label"}, {"y", "count"}, {"bars", std::move(bars)}};
}

inline ReportSection field_data_section(const Project &p) {
    auto s = assemble_detail::make_section(DocumentPart::field_data, false);
    Table outcrops{"Afloramientos", {"Código", "X (m)", "Y (m)", "Z (m)", "Sistema de referencia"}, {}};
    Table rocks{"Características de las rocas",
                {"Código", "Tipo de roca", "Roca", "Matriz", "Textura", "Mineralogía", "Tamaño de grano", "Calidad del macizo"},
                {}};
    for (const auto &o : p.outcrops) {
        outcrops.rows.push_back({std::to_string(o.id), fmt::format("{:.2f}", o.coordinates.x),
                                 fmt::format("{:.2f}", o.coordinates.y), fmt::format("{:.2f}", o.coordinates.z), o.crs});
        const auto &r = o.rock;
        rocks.rows.push_back({std::to_string(o.id), prompt::rock_type_es(r.rock_type), r.rock_name, r.matrix, r.texture,
                              r.mineralogy, r.grain_size, r.mass_quality});
    }
    s.blocks.push_back(assemble_detail::table_block("field_data.outcrops", "3.1 Tabla de afloramientos", std::move(outcrops)));
    s.blocks.push_back(assemble_detail::table_block("field_data.rocks", "3.2 Tabla de características de rocas", std::move(rocks)));
    for (const auto &o : p.outcrops) {
        const auto prefix = "field_data.o" + std::to_string(o.id);
        std::string sub = "3.3 Afloramiento " + std::to_string(o.id);
        for (auto role : {ImageRole::outcrop, ImageRole::hand_sample}) {
            const auto *img = o.image(role);
            if (!img) continue;
            Figure f;
            f.kind = "image";
            f.caption = role == ImageRole::outcrop ? "Afloramiento " + std::to_string(o.id)
                                                   : "Muestra de mano, afloramiento " + std::to_string(o.id);
            f.render_hint = "photo";
            f.image_key = img->storage_key;
            f.media_type = img->media_type;
            f.data = Json{{"image_id", img->id}, {"role", to_string(role)}};
            s.blocks.push_back(assemble_detail::figure_block(prefix + "." + std::string(to_string(role)), std::move(f),
                                                             o.id, std::exchange(sub, {})));
        }
        if (!o.joint_sets.empty()) {
            Figure bars{"bar_chart", "Número de medidas por familia de juntas", "bar", "", "", bar_data(o)};
            s.blocks.push_back(assemble_detail::figure_block(prefix + ".bars", std::move(bars), o.id, std::exchange(sub, {})));
            Figure net{"stereonet", "Estereograma de polos (red equiareal, hemisferio inferior)",
                       "equal_area_lower_hemisphere", "", "", stereonet_data(o)};
            s.blocks.push_back(assemble_detail::figure_block(prefix + ".stereonet", std::move(net), o.id, std::exchange(sub, {})));
        }
    }
    return s;
}

inline std::vector<SectionKind> outcrop_kinds(const Outcrop &o) {
    std::vector<SectionKind> kinds{SectionKind::outcrop_description, SectionKind::hand_sample_description};
    if (o.schmidt) kinds.push_back(SectionKind::schmidt_interpretation);
    return kinds;
}

// Per outcrop, in id order: outcrop description, hand sample, Schmidt interpretation.
inline ReportSection results_section(const Project &p, std::vector<std::string> &gaps) {
    auto s = assemble_detail::make_section(DocumentPart::results, true);
    std::vector<const Outcrop *> ordered;
    for (const auto &o : p.outcrops) ordered.push_back(&o);
    std::stable_sort(ordered.begin(), ordered.end(), [](auto *a, auto *b) { return a->id < b->id; });
    for (const auto *o : ordered) {
        bool first = true;
        for (auto k : outcrop_kinds(*o)) {
            const auto *text = assemble_detail::find_text(o->generated, k);
            if (!text) {
                gaps.push_back("outcrop " + std::to_string(o->id) + ": " + std::string(to_string(k)));
                continue;
            }
            auto blocks = paragraphs_from_text("results.o" + std::to_string(o->id) + "." + std::string(to_string(k)),
                                               *text, k, o->id, s.warnings);
            if (first && !blocks.empty()) {
                blocks.front().subheading = "Afloramiento " + std::to_string(o->id);
                first = false;
            }
            for (auto &b : blocks) s.blocks.push_back(std::move(b));
        }
    }
    return s;
}

inline ReportSection conclusions_section(const Project &p, std::vector<std::string> &gaps) {
    auto s = assemble_detail::make_section(DocumentPart::conclusions, true);
    const auto *text = assemble_detail::find_text(p.generated, SectionKind::conclusions);
    if (!text) {
        gaps.emplace_back("conclusions");
        return s;
    }
    s.blocks.push_back(conclusions_block(*text, s.warnings));
    return s;
}

inline ReportSection annex_a_section(const Project &p, const geomech::RatingTables &tables, std::vector<std::string> &gaps) {
    using assemble_detail::num;
    using geomech::RmrParameter;
    auto s = assemble_detail::make_section(DocumentPart::annex_a, false);
    for (const auto &o : p.outcrops) {
        if (!o.rmr_input) {
            gaps.push_back("outcrop " + std::to_string(o.id) + ": rmr_input");
            continue;
        }
        const auto &in = *o.rmr_input;
        auto r = geomech::compute_rmr(in, tables);
        auto pts = [&](RmrParameter k) { return std::to_string(r.per_parameter_points.at(k)); };
        std::string orientation;
        for (const auto &j : o.joint_sets)
            orientation += (orientation.empty() ? "" : "; ") + j.set_label + " " + num(j.dip_direction) + "/" + num(j.dip);
        Table t{"Clasificación RMR, afloramiento " + std::to_string(o.id), {"Parámetro", "Valor", "Puntuación"}, {}};
        t.rows = {
            {"Número de familias de juntas", std::to_string(in.n_joint_families), "-"},
            {"Resistencia a compresión simple (MPa)", num(in.ucs_mpa), pts(RmrParameter::ucs)},
            {"RQD (%)", num(in.rqd_pct), pts(RmrParameter::rqd)},
            {"Espaciamiento (m)", num(in.spacing_m), pts(RmrParameter::spacing)},
            {"Continuidad (m)", num(in.persistence_m), pts(RmrParameter::persistence)},
            {"Apertura (mm)", num(in.aperture_mm), pts(RmrParameter::aperture)},
            {"Rugosidad", labels::roughness(in.roughness), pts(RmrParameter::roughness)},
            {"Relleno", labels::infilling(in.infilling), pts(RmrParameter::infilling)},
            {"Alteración", labels::weathering(in.weathering), pts(RmrParameter::weathering)},
            {"Agua freática", labels::groundwater(in.groundwater), pts(RmrParameter::groundwater)},
            {"RMR básico", "", std::to_string(r.basic_total)},
            {"Orientación de juntas", orientation.empty() ? "-" : orientation, std::to_string(in.orientation_adjustment)},
            {"RMR ajustado", "", std::to_string(r.adjusted_total)},
            {"Clase", r.rmr_class.label, r.rmr_class.description},
        };
        s.blocks.push_back(assemble_detail::table_block("annex_a.o" + std::to_string(o.id),
                                                        "Afloramiento " + std::to_string(o.id), std::move(t), o.id));
    }
    return s;
}

inline ReportSection annex_b_section(const Project &p, const geomech::RatingTables &tables) {
    auto s = assemble_detail::make_section(DocumentPart::annex_b, false);
    std::vector<geomech::OutcropRmr> rows;
    for (const auto &o : p.outcrops)
        if (o.rmr_input) rows.push_back({o.id, o.rmr_input->n_joint_families, geomech::compute_rmr(*o.rmr_input, tables)});
    if (rows.empty() || rows.size() != p.outcrops.size()) return s; // gaps already listed by annex A
    auto ext = geomech::rmr_extremes(rows);
    Table stats{"Estadística por afloramiento", {"Afloramiento", "Familias de juntas", "RMR", "Clase"}, {}};
    for (const auto &row : rows)
        stats.rows.push_back({std::to_string(row.outcrop_id), std::to_string(row.n_joint_families),
                              std::to_string(row.result.adjusted_total), row.result.rmr_class.label});
    s.blocks.push_back(assemble_detail::table_block("annex_b.stats", "", std::move(stats)));

    Block ex;
    ex.id = "annex_b.extremes";
    ex.type = BlockType::fields;
    ex.fields = {{"RMR máximo", fmt::format("{} (afloramiento {})", ext.max.value, ext.max.outcrop_id)},
                 {"RMR mínimo", fmt::format("{} (afloramiento {})", ext.min.value, ext.min.outcrop_id)}};
    s.blocks.push_back(std::move(ex));

    Table schmidt{"Esclerómetro", {"Afloramiento", "Método", "HR promedio 10 mayores", "HR mediana 10 mayores",
                                   "UCS media (MPa)", "UCS mediana (MPa)", "E (MPa)"}, {}};
    for (const auto &o : p.outcrops) {
        if (!o.schmidt) continue;
        auto r = geomech::schmidt_summary(*o.schmidt, tables.schmidt);
        schmidt.rows.push_back({std::to_string(o.id), o.schmidt->method, fmt::format("{:.2f}", r.hr_mean_top10),
                                fmt::format("{:.2f}", r.hr_median_top10), fmt::format("{:.2f}", r.ucs_mean_mpa),
                                fmt::format("{:.2f}", r.ucs_median_mpa), fmt::format("{:.0f}", r.young_modulus_mpa)});
    }
    if (!schmidt.rows.empty()) s.blocks.push_back(assemble_detail::table_block("annex_b.schmidt", "", std::move(schmidt)));

    Table ref{"Clasificación de macizos rocosos RMR", {"Clase", "RMR", "Descripción"}, {}};
    int upper = 100;
    for (const auto &c : tables.rmr.classes) {
        ref.rows.push_back({c.label, fmt::format("{} - {}", c.min, upper), c.description});
        upper = c.min - 1;
    }
    s.blocks.push_back(assemble_detail::table_block("annex_b.classes", "", std::move(ref)));
    return s;
}

// Builds the document from the project's field data and the generated texts
// stored on it. All gaps are collected before failing.
inline ReportDocument assemble_report(const Project &p, const geomech::RatingTables &tables, std::string created_at,
                                      std::string project_ref = {}) {
    auto violations = validate_project(p, ValidationMode::report);
    if (!violations.empty()) throw ValidationError(violations.front().path, violations.front().message);
    std::vector<std::string> gaps;
    ReportDocument d;
    d.project_ref = project_ref.empty() ? p.title : std::move(project_ref);
    d.title = p.title;
    d.created_at = std::move(created_at);
    d.sections.push_back(cover_section(p));
    d.sections.push_back(text_section(p, DocumentPart::introduction, SectionKind::introduction_stage1,
                                      SectionKind::introduction_stage2, gaps));
    d.sections.push_back(objectives_section(p, gaps));
    d.sections.push_back(field_data_section(p));
    d.sections.push_back(results_section(p, gaps));
    d.sections.push_back(text_section(p, DocumentPart::discussion, SectionKind::discussion_stage1,
                                      SectionKind::discussion_stage2, gaps));
    d.sections.push_back(conclusions_section(p, gaps));
    d.sections.push_back(annex_a_section(p, tables, gaps));
    d.sections.push_back(annex_b_section(p, tables));
    if (!gaps.empty()) throw AssemblyError(gaps);
    return d;
}

} // namespace georeport::report
