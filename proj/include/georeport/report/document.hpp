#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "georeport/core/domain.hpp"
#include "georeport/core/json_io.hpp"

namespace georeport::report {

// Top-level parts of the report, in document order.
enum class DocumentPart { cover, introduction, objectives, field_data, results, discussion, conclusions, annex_a, annex_b };

inline constexpr std::array<DocumentPart, 9> document_order{
    DocumentPart::cover,      DocumentPart::introduction, DocumentPart::objectives,
    DocumentPart::field_data, DocumentPart::results,      DocumentPart::discussion,
    DocumentPart::conclusions, DocumentPart::annex_a,     DocumentPart::annex_b,
};

inline std::string_view heading_of(DocumentPart p) {
    switch (p) {
    case DocumentPart::cover: return "Portada";
    case DocumentPart::introduction: return "1. Introducción";
    case DocumentPart::objectives: return "2. Objetivos";
    case DocumentPart::field_data: return "3. Datos de campo";
    case DocumentPart::results: return "4. Resultados";
    case DocumentPart::discussion: return "5. Discusión";
    case DocumentPart::conclusions: return "6. Conclusiones";
    case DocumentPart::annex_a: return "Anexo A";
    case DocumentPart::annex_b: return "Anexo B";
    }
    return {};
}

enum class BlockType { paragraph, numbered_list, table, figure, fields };

struct Table {
    std::string caption;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    friend bool operator==(const Table &, const Table &) = default;
};

// Figures carry data plus a rendering hint; nothing is pre-rasterized.
// kind: "image" (storage_key of an uploaded photo), "stereonet", "bar_chart".
struct Figure {
    std::string kind;
    std::string caption;
    std::string render_hint;
    std::string image_key;
    std::string media_type;
    Json data;
    friend bool operator==(const Figure &a, const Figure &b) {
        return a.kind == b.kind && a.caption == b.caption && a.render_hint == b.render_hint &&
               a.image_key == b.image_key && a.media_type == b.media_type && a.data == b.data;
    }
};

struct Block {
    std::string id; // stable within a document, e.g. "results.o2.outcrop_description.p1"
    BlockType type = BlockType::paragraph;
    std::string subheading;
    std::string text;                                        // paragraph
    std::vector<std::string> items;                          // numbered_list
    std::vector<std::pair<std::string, std::string>> fields; // fields (label, value)
    std::optional<Table> table;
    std::optional<Figure> figure;
    std::optional<SectionKind> source; // generated section the text came from
    std::optional<int> outcrop_id;
    friend bool operator==(const Block &, const Block &) = default;
};

struct ReportSection {
    DocumentPart part = DocumentPart::cover;
    std::string heading;
    std::vector<Block> blocks;
    bool editable = false;
    std::vector<std::string> warnings;
    friend bool operator==(const ReportSection &, const ReportSection &) = default;
};

struct ReportDocument {
    std::string project_ref;
    std::string title;
    std::string created_at; // ISO-8601, supplied by the caller
    std::vector<ReportSection> sections;
    friend bool operator==(const ReportDocument &, const ReportDocument &) = default;

    const ReportSection *section(DocumentPart p) const {
        for (const auto &s : sections)
            if (s.part == p) return &s;
        return nullptr;
    }
    ReportSection *section(DocumentPart p) {
        for (auto &s : sections)
            if (s.part == p) return &s;
        return nullptr;
    }
};

} // namespace georeport::report

namespace georeport {

template <> struct EnumNames<report::DocumentPart> {
    static constexpr std::array<std::pair<report::DocumentPart, std::string_view>, 9> names{{
        {report::DocumentPart::cover, "cover"},
        {report::DocumentPart::introduction, "introduction"},
        {report::DocumentPart::objectives, "objectives"},
        {report::DocumentPart::field_data, "field_data"},
        {report::DocumentPart::results, "results"},
        {report::DocumentPart::discussion, "discussion"},
        {report::DocumentPart::conclusions, "conclusions"},
        {report::DocumentPart::annex_a, "annex_a"},
        {report::DocumentPart::annex_b, "annex_b"},
    }};
};

template <> struct EnumNames<report::BlockType> {
    static constexpr std::array<std::pair<report::BlockType, std::string_view>, 5> names{{
        {report::BlockType::paragraph, "paragraph"},
        {report::BlockType::numbered_list, "numbered_list"},
        {report::BlockType::table, "table"},
        {report::BlockType::figure, "figure"},
        {report::BlockType::fields, "fields"},
    }};
};

namespace report {

inline Json write(const Table &t) {
    return Json{{"caption", t.caption}, {"columns", t.columns}, {"rows", t.rows}};
}

inline Json write(const Figure &f) {
    Json j{{"kind", f.kind}, {"caption", f.caption}, {"render_hint", f.render_hint}};
    if (!f.image_key.empty()) j["image_key"] = f.image_key;
    if (!f.media_type.empty()) j["media_type"] = f.media_type;
    j["data"] = f.data;
    return j;
}

inline Json write(const Block &b) {
    Json j{{"id", b.id}, {"type", to_string(b.type)}};
    if (!b.subheading.empty()) j["subheading"] = b.subheading;
    switch (b.type) {
    case BlockType::paragraph: j["text"] = b.text; break;
    case BlockType::numbered_list: j["items"] = b.items; break;
    case BlockType::fields: {
        Json f = Json::array();
        for (const auto &[label, value] : b.fields) f.push_back(Json{{"label", label}, {"value", value}});
        j["fields"] = std::move(f);
        break;
    }
    case BlockType::table:
        if (b.table) j["table"] = write(*b.table);
        break;
    case BlockType::figure:
        if (b.figure) j["figure"] = write(*b.figure);
        break;
    }
    if (b.source) j["source"] = to_string(*b.source);
    if (b.outcrop_id) j["outcrop_id"] = *b.outcrop_id;
    return j;
}

inline Json write(const ReportSection &s) {
    Json blocks = Json::array();
    for (const auto &b : s.blocks) blocks.push_back(write(b));
    return Json{{"part", to_string(s.part)},
                {"heading", s.heading},
                {"editable", s.editable},
                {"warnings", s.warnings},
                {"blocks", std::move(blocks)}};
}

inline Json write(const ReportDocument &d) {
    Json sections = Json::array();
    for (const auto &s : d.sections) sections.push_back(write(s));
    return Json{{"schema", "georeport.report/1"},
                {"project_ref", d.project_ref},
                {"title", d.title},
                {"created_at", d.created_at},
                {"sections", std::move(sections)}};
}

inline Block read_block(const Json &j, const std::string &path) {
    using namespace json_io;
    Block b;
    b.id = get_string(j, "id", path);
    b.type = get_enum<BlockType>(j, "type", path);
    b.subheading = get_string_or(j, "subheading", path);
    switch (b.type) {
    case BlockType::paragraph: b.text = get_string(j, "text", path); break;
    case BlockType::numbered_list:
        for (const auto &it : get_array(j, "items", path)) b.items.push_back(as_string(it, path + ".items"));
        break;
    case BlockType::fields: {
        const auto &fields = get_array(j, "fields", path);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            auto p = index_path(path + ".fields", i);
            b.fields.emplace_back(get_string(fields[i], "label", p), get_string(fields[i], "value", p));
        }
        break;
    }
    case BlockType::table: {
        const auto &t = require(j, "table", path);
        const auto tp = path + ".table";
        Table tb;
        tb.caption = get_string_or(t, "caption", tp);
        for (const auto &c : get_array(t, "columns", tp)) tb.columns.push_back(as_string(c, tp + ".columns"));
        for (const auto &row : get_array(t, "rows", tp)) {
            std::vector<std::string> r;
            for (const auto &cell : row) r.push_back(as_string(cell, tp + ".rows"));
            tb.rows.push_back(std::move(r));
        }
        b.table = std::move(tb);
        break;
    }
    case BlockType::figure: {
        const auto &f = require(j, "figure", path);
        const auto fp = path + ".figure";
        Figure fg;
        fg.kind = get_string(f, "kind", fp);
        fg.caption = get_string_or(f, "caption", fp);
        fg.render_hint = get_string_or(f, "render_hint", fp);
        fg.image_key = get_string_or(f, "image_key", fp);
        fg.media_type = get_string_or(f, "media_type", fp);
        fg.data = f.contains("data") ? f.at("data") : Json();
        b.figure = std::move(fg);
        break;
    }
    }
    if (optional(j, "source")) b.source = get_enum<SectionKind>(j, "source", path);
    if (optional(j, "outcrop_id")) b.outcrop_id = static_cast<int>(get_integer(j, "outcrop_id", path));
    return b;
}

inline ReportDocument read_document(const Json &j, const std::string &path = "$") {
    using namespace json_io;
    ReportDocument d;
    d.project_ref = get_string(j, "project_ref", path);
    d.title = get_string_or(j, "title", path);
    d.created_at = get_string(j, "created_at", path);
    const auto &sections = get_array(j, "sections", path);
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto sp = index_path(path + ".sections", i);
        const auto &sj = sections[i];
        ReportSection s;
        s.part = get_enum<DocumentPart>(sj, "part", sp);
        s.heading = get_string(sj, "heading", sp);
        s.editable = require(sj, "editable", sp).get<bool>();
        for (const auto &w : get_array(sj, "warnings", sp)) s.warnings.push_back(as_string(w, sp + ".warnings"));
        const auto &blocks = get_array(sj, "blocks", sp);
        for (std::size_t k = 0; k < blocks.size(); ++k) s.blocks.push_back(read_block(blocks[k], index_path(sp + ".blocks", k)));
        d.sections.push_back(std::move(s));
    }
    return d;
}

} // namespace report
} // namespace georeport
