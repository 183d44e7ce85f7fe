#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "georeport/core/domain.hpp"
#include "georeport/core/json_io.hpp"
#include "georeport/error.hpp"

namespace georeport::prompt {

inline constexpr std::string_view slot_open = "{{";
inline constexpr std::string_view slot_close = "}}";

struct PromptTemplate {
    SectionKind kind = SectionKind::objectives;
    std::string template_text;
    std::vector<std::string> required_slots;
    std::optional<ImageRole> image_role; // set => exactly one image of this role
    int word_limit = 100;

    bool expects_image() const { return image_role.has_value(); }
};

// Placeholder names in order of appearance (duplicates kept).
inline std::vector<std::string> placeholders(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find(slot_open, pos)) != std::string_view::npos) {
        auto end = text.find(slot_close, pos + slot_open.size());
        if (end == std::string_view::npos) break;
        out.emplace_back(text.substr(pos + slot_open.size(), end - pos - slot_open.size()));
        pos = end + slot_close.size();
    }
    return out;
}

class PromptCatalog {
  public:
    PromptCatalog() = default;

    void add(PromptTemplate t) {
        std::set<std::string> declared(t.required_slots.begin(), t.required_slots.end());
        std::set<std::string> used;
        for (auto &name : placeholders(t.template_text)) {
            if (!declared.count(name))
                throw ParseError("templates." + std::string(to_string(t.kind)),
                                 "placeholder {{" + name + "}} is not a declared slot");
            used.insert(name);
        }
        for (const auto &name : declared)
            if (!used.count(name))
                throw ParseError("templates." + std::string(to_string(t.kind)),
                                 "slot '" + name + "' never appears in the template");
        if (t.word_limit <= 0) throw ParseError("templates." + std::string(to_string(t.kind)), "word_limit must be positive");
        templates_[t.kind] = std::move(t);
    }

    const PromptTemplate &at(SectionKind k) const {
        auto it = templates_.find(k);
        if (it == templates_.end()) throw NotFoundError("no prompt template for " + std::string(to_string(k)));
        return it->second;
    }
    bool contains(SectionKind k) const { return templates_.count(k) != 0; }
    std::size_t size() const { return templates_.size(); }

    std::string version;
    std::map<std::string, std::string> preliminary_defaults;

  private:
    std::map<SectionKind, PromptTemplate> templates_;
};

namespace catalog_detail {

inline std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw NotFoundError("cannot open prompt file " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace catalog_detail

// Reads <dir>/manifest.json and the template files it names. Every SectionKind
// must be present.
inline PromptCatalog load_catalog(const std::filesystem::path &dir) {
    const auto manifest_path = dir / "manifest.json";
    Json m;
    try {
        m = Json::parse(catalog_detail::read_text(manifest_path));
    } catch (const Json::parse_error &e) {
        throw ParseError(manifest_path.string(), e.what());
    }
    PromptCatalog cat;
    cat.version = json_io::get_string_or(m, "version", "$");
    const int default_limit = static_cast<int>(json_io::get_integer(m, "word_limit", "$"));
    const auto &templates = json_io::require(m, "templates", "$");
    for (SectionKind kind : all_section_kinds) {
        const std::string key(to_string(kind));
        const std::string path = "$.templates." + key;
        if (!templates.contains(key)) throw ParseError(path, "missing template entry");
        const auto &entry = templates.at(key);
        PromptTemplate t;
        t.kind = kind;
        t.template_text = catalog_detail::read_text(dir / json_io::get_string(entry, "file", path));
        for (const auto &s : json_io::get_array(entry, "slots", path)) t.required_slots.push_back(json_io::as_string(s, path + ".slots"));
        if (entry.contains("image_role")) t.image_role = json_io::get_enum<ImageRole>(entry, "image_role", path);
        t.word_limit = entry.contains("word_limit") ? static_cast<int>(json_io::get_integer(entry, "word_limit", path)) : default_limit;
        cat.add(std::move(t));
    }
    if (m.contains("preliminary_defaults"))
        for (const auto &[k, v] : m.at("preliminary_defaults").items())
            cat.preliminary_defaults[k] = json_io::as_string(v, "$.preliminary_defaults." + k);
    return cat;
}

} // namespace georeport::prompt
