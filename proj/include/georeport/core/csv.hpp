#pragma once

// Minimal RFC 4180 reader: comma separated, double-quoted fields with ""
// escapes, embedded newlines inside quotes, LF or CRLF records, optional BOM.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "georeport/error.hpp"

namespace georeport::csv {

using Record = std::vector<std::string>;

inline std::vector<Record> parse(std::string_view text, const std::string &source = "<csv>") {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<Record> rows;
    Record row;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t line = 1;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field_started && !field.empty())
                throw ParseError(source + ":" + std::to_string(line), "quote inside unquoted field");
            quoted = true;
            field_started = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            ++line;
            break;
        default:
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw ParseError(source + ":" + std::to_string(line), "unterminated quoted field");
    if (!field.empty() || !row.empty()) end_row();
    return rows;
}

inline std::vector<Record> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Column index by header name; SchemaError naming the column when absent.
inline std::size_t column(const Record &header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw SchemaError(std::string(name));
}

} // namespace georeport::csv
