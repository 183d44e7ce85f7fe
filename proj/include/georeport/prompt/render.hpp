#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "georeport/core/domain.hpp"
#include "georeport/error.hpp"
#include "georeport/prompt/catalog.hpp"

namespace georeport::prompt {

using SlotValues = std::map<std::string, std::string>;

struct RenderedPrompt {
    SectionKind kind = SectionKind::objectives;
    std::string text;
    std::vector<ImageRef> attached_images;
    std::optional<int> outcrop_id; // per-outcrop sections only
    int word_limit = 100;
    friend bool operator==(const RenderedPrompt &, const RenderedPrompt &) = default;
};

namespace render_detail {

inline bool blank(const std::string &s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

} // namespace render_detail

// Single left-to-right pass: substituted values are never rescanned, so text
// containing "{{" in user data stays literal.
inline std::string substitute(const std::string &tmpl, const SlotValues &values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (true) {
        auto open = tmpl.find(slot_open, pos);
        if (open == std::string::npos) break;
        auto close = tmpl.find(slot_close, open + slot_open.size());
        if (close == std::string::npos) break;
        const std::string name = tmpl.substr(open + slot_open.size(), close - open - slot_open.size());
        auto it = values.find(name);
        if (it == values.end() || render_detail::blank(it->second)) throw MissingSlotError(name);
        out.append(tmpl, pos, open - pos);
        out += it->second;
        pos = close + slot_close.size();
    }
    out.append(tmpl, pos, std::string::npos);
    return out;
}

inline RenderedPrompt render_prompt(const PromptCatalog &catalog, SectionKind kind, const SlotValues &context,
                                    const std::vector<ImageRef> &images = {},
                                    std::optional<int> outcrop_id = std::nullopt) {
    const auto &t = catalog.at(kind);
    for (const auto &slot : t.required_slots) {
        auto it = context.find(slot);
        if (it == context.end() || render_detail::blank(it->second)) throw MissingSlotError(slot);
    }
    if (t.image_role) {
        if (images.empty()) throw ImageAttachmentError(std::string(to_string(kind)) + " needs one image");
        if (images.size() > 1) throw ImageAttachmentError(std::string(to_string(kind)) + " takes exactly one image");
        if (images.front().role != *t.image_role)
            throw ImageAttachmentError(std::string(to_string(kind)) + " needs an image with role " +
                                       std::string(to_string(*t.image_role)));
    } else if (!images.empty() && kind != SectionKind::preliminary) {
        throw ImageAttachmentError(std::string(to_string(kind)) + " does not take images");
    }
    RenderedPrompt r;
    r.kind = kind;
    r.text = substitute(t.template_text, context);
    r.attached_images = images;
    r.outcrop_id = is_per_outcrop(kind) ? outcrop_id : std::nullopt;
    r.word_limit = t.word_limit;
    return r;
}

struct PreliminaryComponents {
    std::string role;
    std::string request;
    std::string geo_features;
    std::string geotech_features;
    std::string length;
};

inline PreliminaryComponents default_preliminary(const PromptCatalog &catalog) {
    auto get = [&](const char *k) {
        auto it = catalog.preliminary_defaults.find(k);
        return it == catalog.preliminary_defaults.end() ? std::string{} : it->second;
    };
    return {get("role"), get("request"), get("geo_features"), get("geotech_features"), get("length")};
}

// Role + request + geological + geotechnical features + length, single-space
// joined. At most one image (the outcrop photo being described).
inline RenderedPrompt render_preliminary(const PromptCatalog &catalog, const PreliminaryComponents &c,
                                         const std::vector<ImageRef> &images = {}) {
    const std::pair<const char *, const std::string *> parts[] = {
        {"role", &c.role},
        {"request", &c.request},
        {"geo_features", &c.geo_features},
        {"geotech_features", &c.geotech_features},
        {"length", &c.length},
    };
    SlotValues values;
    for (const auto &[name, value] : parts) {
        if (render_detail::blank(*value)) throw ValidationError(name, "preliminary prompt component is empty");
        values[name] = *value;
    }
    if (images.size() > 1) throw ImageAttachmentError("preliminary prompt takes at most one image");
    return render_prompt(catalog, SectionKind::preliminary, values, images);
}

// Position of a kind in the report dispatch order. The three per-outcrop kinds
// share one position: they are generated outcrop by outcrop.
inline int dispatch_rank(SectionKind k) {
    switch (k) {
    case SectionKind::objectives: return 0;
    case SectionKind::introduction_stage1: return 1;
    case SectionKind::introduction_stage2: return 2;
    case SectionKind::outcrop_description:
    case SectionKind::hand_sample_description:
    case SectionKind::schmidt_interpretation: return 3;
    case SectionKind::discussion_stage1: return 4;
    case SectionKind::discussion_stage2: return 5;
    case SectionKind::conclusions: return 6;
    case SectionKind::preliminary: break;
    }
    return -1;
}

// Validates a report dispatch plan and returns it unchanged. Prompts are sent
// one per section, never concatenated into one call.
inline std::vector<RenderedPrompt> compose_final(std::vector<RenderedPrompt> prompts) {
    if (prompts.empty()) throw SequencingError("empty prompt sequence");
    std::set<SectionKind> seen_global;
    std::set<std::pair<int, SectionKind>> seen_outcrop;
    std::map<int, SectionKind> last_kind_for_outcrop;
    int last_rank = -1;
    for (std::size_t i = 0; i < prompts.size(); ++i) {
        const auto &p = prompts[i];
        const std::string at = "prompt " + std::to_string(i) + " (" + std::string(to_string(p.kind)) + ")";
        const int rank = dispatch_rank(p.kind);
        if (rank < 0) throw SequencingError(at + ": preliminary prompts are not part of a report");
        if (rank < last_rank) throw SequencingError(at + " is out of order");
        last_rank = rank;
        if (is_per_outcrop(p.kind)) {
            if (!p.outcrop_id) throw SequencingError(at + " has no outcrop id");
            if (!seen_outcrop.insert({*p.outcrop_id, p.kind}).second)
                throw SequencingError(at + " repeated for outcrop " + std::to_string(*p.outcrop_id));
            auto it = last_kind_for_outcrop.find(*p.outcrop_id);
            if (it != last_kind_for_outcrop.end() && it->second > p.kind)
                throw SequencingError(at + " is out of order for outcrop " + std::to_string(*p.outcrop_id));
            last_kind_for_outcrop[*p.outcrop_id] = p.kind;
        } else {
            if (!seen_global.insert(p.kind).second) throw SequencingError(at + " is duplicated");
            if (p.kind == SectionKind::introduction_stage2 && !seen_global.count(SectionKind::introduction_stage1))
                throw SequencingError(at + " requires introduction_stage1 first");
            if (p.kind == SectionKind::discussion_stage2 && !seen_global.count(SectionKind::discussion_stage1))
                throw SequencingError(at + " requires discussion_stage1 first");
        }
    }
    return prompts;
}

} // namespace georeport::prompt
