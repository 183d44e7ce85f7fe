#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "georeport/core/digest.hpp"
#include "georeport/error.hpp"
#include "georeport/report/document.hpp"
#include "georeport/report/text_blocks.hpp"

namespace georeport::report {

enum class ExportFormat { json, html, markdown };

} // namespace georeport::report

namespace georeport {
template <> struct EnumNames<report::ExportFormat> {
    static constexpr std::array<std::pair<report::ExportFormat, std::string_view>, 3> names{{
        {report::ExportFormat::json, "json"},
        {report::ExportFormat::html, "html"},
        {report::ExportFormat::markdown, "markdown"},
    }};
};
} // namespace georeport

namespace georeport::report {

// Returns the stored bytes for an image figure, or nullopt to draw a placeholder.
using ImageResolver = std::function<std::optional<std::string>(const Figure &)>;

inline std::string export_json(const ReportDocument &d) { return write(d).dump(2) + "\n"; }

inline ReportDocument import_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError("$", std::string("report json: ") + e.what());
    }
    return read_document(j);
}

namespace html_detail {

inline std::string esc(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += ' '; break;
        default: out += c;
        }
    }
    return out;
}

inline constexpr std::string_view style = R"(body{font-family:"Times New Roman",serif;max-width:50em;margin:2em auto;line-height:1.45;color:#111}
h1{text-align:center;font-size:1.6em}h2{margin-top:1.6em;border-bottom:1px solid #999}h3{font-size:1.05em;margin-bottom:.3em}
p{text-align:justify}table{border-collapse:collapse;margin:.8em 0;font-size:.9em}th,td{border:1px solid #666;padding:.2em .5em;text-align:left}
caption{font-weight:bold;caption-side:top;padding:.3em}figure{margin:1em 0;text-align:center;break-inside:avoid}figcaption{font-size:.9em;font-style:italic}
dl.fields{display:grid;grid-template-columns:max-content auto;gap:.2em 1em}dl.fields dt{font-weight:bold}dl.fields dd{margin:0}
img{max-width:100%;max-height:20em}.placeholder{border:1px dashed #999;padding:2em;color:#666}
@page{size:A4;margin:2cm}
@media print{body{margin:0;max-width:none}section{break-before:page}section.cover{break-before:auto}table,figure,dl{break-inside:avoid}h2,h3{break-after:avoid}})";

inline std::string svg_stereonet(const Json &data) {
    constexpr double c = 110, r = 100;
    std::string s = R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 220 220" width="220" height="220">)";
    s += fmt::format(R"(<circle cx="{0}" cy="{0}" r="{1}" fill="none" stroke="#000"/>)", c, r);
    s += fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#000"/><text x="{0}" y="{3}" font-size="9" text-anchor="middle">N</text>)",
                     c, c - r, c - r + 6, c - r - 2);
    s += fmt::format(R"(<line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="#bbb"/><line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#bbb"/>)",
                     c, c - r, c + r);
    for (const auto &p : data.at("poles")) {
        double x = c + r * p.at("x").get<double>();
        double y = c - r * p.at("y").get<double>();
        s += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="3" fill="#b22"/><text x="{:.2f}" y="{:.2f}" font-size="9">{}</text>)",
                         x, y, x + 4, y - 4, esc(p.at("label").get<std::string>()));
    }
    return s + "</svg>";
}

inline std::string svg_bars(const Json &data) {
    const auto &bars = data.at("bars");
    int max = 1;
    for (const auto &b : bars) max = std::max(max, b.at("count").get<int>());
    const int n = static_cast<int>(bars.size());
    const double w = 40, gap = 15, h = 150, base = 170;
    const double width = 30 + n * (w + gap);
    std::string s = fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {0:.0f} 200" width="{0:.0f}" height="200">)", width);
    s += fmt::format(R"(<line x1="20" y1="{0}" x2="{1:.0f}" y2="{0}" stroke="#000"/>)", base, width - 5);
    int i = 0;
    for (const auto &b : bars) {
        int count = b.at("count").get<int>();
        double bh = h * count / max;
        double x = 25 + i++ * (w + gap);
        s += fmt::format(R"(<rect x="{:.1f}" y="{:.1f}" width="{}" height="{:.1f}" fill="#4a6fa5"/>)", x, base - bh, w, bh);
        s += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="10" text-anchor="middle">{}</text>)", x + w / 2, base - bh - 3, count);
        s += fmt::format(R"(<text x="{:.1f}" y="{}" font-size="10" text-anchor="middle">{}</text>)", x + w / 2, base + 14,
                         esc(b.at("label").get<std::string>()));
    }
    return s + "</svg>";
}

inline std::string figure(const Figure &f, const ImageResolver &resolve) {
    std::string body;
    if (f.kind == "stereonet") {
        body = svg_stereonet(f.data);
    } else if (f.kind == "bar_chart") {
        body = svg_bars(f.data);
    } else {
        std::optional<std::string> bytes = resolve ? resolve(f) : std::nullopt;
        if (bytes)
            body = fmt::format(R"(<img src="data:{};base64,{}" alt="{}">)", esc(f.media_type), base64_encode(*bytes), esc(f.caption));
        else
            body = fmt::format(R"(<div class="placeholder">{}</div>)", esc(f.caption));
    }
    return fmt::format(R"(<figure data-render-hint="{}">{}<figcaption>{}</figcaption></figure>)", esc(f.render_hint), body,
                       esc(f.caption));
}

inline std::string table(const Table &t) {
    std::string s = "<table>";
    if (!t.caption.empty()) s += "<caption>" + esc(t.caption) + "</caption>";
    s += "<thead><tr>";
    for (const auto &c : t.columns) s += "<th>" + esc(c) + "</th>";
    s += "</tr></thead><tbody>";
    for (const auto &row : t.rows) {
        s += "<tr>";
        for (const auto &cell : row) s += "<td>" + esc(cell) + "</td>";
        s += "</tr>";
    }
    return s + "</tbody></table>";
}

inline std::string block(const Block &b, const ImageResolver &resolve) {
    std::string inner;
    switch (b.type) {
    case BlockType::paragraph: inner = "<p>" + esc(b.text) + "</p>"; break;
    case BlockType::numbered_list:
        inner = "<ol>";
        for (const auto &item : b.items) inner += "<li>" + esc(item) + "</li>";
        inner += "</ol>";
        break;
    case BlockType::table:
        if (b.table) inner = table(*b.table);
        break;
    case BlockType::figure:
        if (b.figure) inner = figure(*b.figure, resolve);
        break;
    case BlockType::fields:
        inner = R"(<dl class="fields">)";
        for (const auto &[k, v] : b.fields) inner += "<dt>" + esc(k) + "</dt><dd>" + esc(v) + "</dd>";
        inner += "</dl>";
        break;
    }
    std::string head = b.subheading.empty() ? "" : "<h3>" + esc(b.subheading) + "</h3>";
    return fmt::format(R"(<div class="block" data-block="{}">{}{}</div>)", esc(b.id), head, inner);
}

} // namespace html_detail

// Self-contained page: inline CSS with print rules, charts as inline SVG,
// photos as data URIs when a resolver supplies their bytes. One block per line.
inline std::string export_html(const ReportDocument &d, const ImageResolver &resolve = {}) {
    using html_detail::esc;
    std::string out = "<!DOCTYPE html>\n<html lang=\"es\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += "<title>" + esc(d.title) + "</title>\n<style>\n" + std::string(html_detail::style) + "\n</style>\n</head>\n<body>\n";
    out += "<h1>" + esc(d.title) + "</h1>\n";
    for (const auto &s : d.sections) {
        out += fmt::format("<section class=\"{}\" id=\"{}\">\n", to_string(s.part), to_string(s.part));
        out += "<h2>" + esc(s.heading) + "</h2>\n";
        for (const auto &b : s.blocks) out += html_detail::block(b, resolve) + "\n";
        out += "</section>\n";
    }
    return out + "</body>\n</html>\n";
}

namespace md_detail {

inline std::string cell(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

inline std::string table(const Table &t) {
    std::string s;
    if (!t.caption.empty()) s += "**" + t.caption + "**\n\n";
    s += "|";
    for (const auto &c : t.columns) s += " " + cell(c) + " |";
    s += "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += " --- |";
    s += "\n";
    for (const auto &row : t.rows) {
        s += "|";
        for (const auto &c : row) s += " " + cell(c) + " |";
        s += "\n";
    }
    return s;
}

inline std::string figure(const Figure &f) {
    if (f.kind == "image") return "![" + f.caption + "](" + f.image_key + ")\n";
    std::string s = "*" + f.caption + "*\n\n```json\n" + f.data.dump() + "\n```\n";
    return s;
}

} // namespace md_detail

// Title is "#", sections "##", block subheadings "###".
inline std::string export_markdown(const ReportDocument &d) {
    std::string out = "# " + d.title + "\n";
    for (const auto &s : d.sections) {
        out += "\n## " + s.heading + "\n";
        for (const auto &b : s.blocks) {
            out += "\n";
            if (!b.subheading.empty()) out += "### " + b.subheading + "\n\n";
            switch (b.type) {
            case BlockType::paragraph: out += b.text + "\n"; break;
            case BlockType::numbered_list:
                for (std::size_t i = 0; i < b.items.size(); ++i) out += fmt::format("{}. {}\n", i + 1, b.items[i]);
                break;
            case BlockType::table:
                if (b.table) out += md_detail::table(*b.table);
                break;
            case BlockType::figure:
                if (b.figure) out += md_detail::figure(*b.figure);
                break;
            case BlockType::fields:
                for (const auto &[k, v] : b.fields) out += "- **" + k + ":** " + v + "\n";
                break;
            }
        }
    }
    return out;
}

inline std::string export_document(const ReportDocument &d, ExportFormat format, const ImageResolver &resolve = {}) {
    switch (format) {
    case ExportFormat::json: return export_json(d);
    case ExportFormat::html: return export_html(d, resolve);
    case ExportFormat::markdown: return export_markdown(d);
    }
    throw ValidationError("format", "unknown export format");
}

inline std::string export_document(const ReportDocument &d, std::string_view format, const ImageResolver &resolve = {}) {
    auto f = enum_from_string<ExportFormat>(format);
    if (!f) throw ValidationError("format", "unknown export format '" + std::string(format) + "'");
    return export_document(d, *f, resolve);
}

// Replaces the text of one paragraph block (or the items of a numbered list,
// one per line) and refreshes that block's word-limit warnings.
inline void edit_block(ReportDocument &d, const std::string &block_id, const std::string &text) {
    for (auto &s : d.sections) {
        for (auto &b : s.blocks) {
            if (b.id != block_id) continue;
            if (!s.editable) throw ValidationError(block_id, "section " + s.heading + " is not editable");
            auto drop_warnings = [&] {
                std::erase_if(s.warnings, [&](const std::string &w) {
                    return w.starts_with(block_id + ":") || w.starts_with(block_id + "[");
                });
            };
            if (b.type == BlockType::paragraph) {
                drop_warnings();
                b.text = trim(text);
                if (auto w = word_limit_warning(b.id, b.text)) s.warnings.push_back(*w);
            } else if (b.type == BlockType::numbered_list) {
                std::vector<std::string> items;
                for (auto &line : split_lines(text))
                    if (auto t = trim(strip_item_marker(line)); !t.empty()) items.push_back(std::move(t));
                if (block_id.starts_with("conclusions") && (items.size() < 4 || items.size() > 6))
                    throw ValidationError(block_id, "conclusions need 4 to 6 items");
                drop_warnings();
                b.items = std::move(items);
                for (std::size_t i = 0; i < b.items.size(); ++i)
                    if (auto w = word_limit_warning(b.id + "[" + std::to_string(i + 1) + "]", b.items[i]))
                        s.warnings.push_back(*w);
            } else {
                throw ValidationError(block_id, "only paragraph and list blocks are editable");
            }
            return;
        }
    }
    throw NotFoundError("block " + block_id);
}

} // namespace georeport::report
