#pragma once

// Splitting generated text into document blocks.

#include <regex>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "georeport/core/utf8.hpp"
#include "georeport/error.hpp"
#include "georeport/report/document.hpp"

namespace georeport::report {

inline constexpr std::size_t paragraph_word_limit = 100;

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(trim(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

// Paragraphs are separated by one or more blank lines; single newlines are
// folded into spaces.
inline std::vector<std::string> split_paragraphs(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (auto &line : split_lines(text)) {
        if (line.empty()) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        if (!cur.empty()) cur += ' ';
        cur += line;
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline std::optional<std::string> word_limit_warning(const std::string &block_id, const std::string &text) {
    const auto words = utf8::word_count(text);
    if (words <= paragraph_word_limit) return std::nullopt;
    return fmt::format("{}: {} words (limit {})", block_id, words, paragraph_word_limit);
}

inline Block paragraph_block(std::string id, std::string text, std::optional<SectionKind> source = std::nullopt,
                             std::optional<int> outcrop_id = std::nullopt, std::string subheading = {}) {
    Block b;
    b.id = std::move(id);
    b.type = BlockType::paragraph;
    b.text = std::move(text);
    b.source = source;
    b.outcrop_id = outcrop_id;
    b.subheading = std::move(subheading);
    return b;
}

// Paragraph blocks "<prefix>.p1", "<prefix>.p2", ... with >100-word warnings.
inline std::vector<Block> paragraphs_from_text(const std::string &prefix, const std::string &text, SectionKind source,
                                               std::optional<int> outcrop_id, std::vector<std::string> &warnings) {
    std::vector<Block> out;
    int n = 0;
    for (auto &p : split_paragraphs(text)) {
        auto id = prefix + ".p" + std::to_string(++n);
        if (auto w = word_limit_warning(id, p)) warnings.push_back(*w);
        out.push_back(paragraph_block(std::move(id), std::move(p), source, outcrop_id));
    }
    return out;
}

// Drops list markers and "Objetivo general:" style labels some models add
// despite being told not to.
inline std::string strip_item_marker(const std::string &line) {
    static const std::regex marker(R"(^(\d+[.)]|[-*•])\s+)");
    static const std::regex label(R"(^(Objetivo (general|específico( \d+)?)|Objetivos específicos)\s*[:.-]\s*)",
                                  std::regex::icase);
    auto s = std::regex_replace(line, marker, "", std::regex_constants::format_first_only);
    return std::regex_replace(s, label, "", std::regex_constants::format_first_only);
}

struct Objectives {
    std::string general;
    std::array<std::string, 2> specific;
};

// Exactly three non-empty lines or paragraphs: the general objective, then two specific ones.
inline Objectives parse_objectives(const std::string &text) {
    std::vector<std::string> items;
    for (auto &line : split_lines(text)) {
        auto s = trim(strip_item_marker(line));
        if (!s.empty()) items.push_back(std::move(s));
    }
    if (items.size() != 3)
        throw FormatError("objectives: expected 1 general and 2 specific objectives, got " + std::to_string(items.size()) +
                          " items");
    return {items[0], {items[1], items[2]}};
}

// Items start at lines beginning with "N." or "N)"; following lines continue
// the current item. Text before the first marker is ignored.
inline std::vector<std::string> parse_numbered_list(const std::string &text) {
    static const std::regex start(R"(^\d+[.)]\s+)");
    std::vector<std::string> items;
    for (auto &line : split_lines(text)) {
        if (line.empty()) continue;
        if (std::regex_search(line, start)) {
            items.push_back(trim(std::regex_replace(line, start, "", std::regex_constants::format_first_only)));
        } else if (!items.empty()) {
            items.back() += " " + line;
        }
    }
    return items;
}

inline std::vector<std::string> parse_conclusions(const std::string &text) {
    auto items = parse_numbered_list(text);
    if (items.size() < 4 || items.size() > 6)
        throw FormatError("conclusions: expected 4 to 6 numbered items, got " + std::to_string(items.size()));
    return items;
}

} // namespace georeport::report
