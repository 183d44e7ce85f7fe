#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "georeport/llm/gateway.hpp"
#include "georeport/prompt/catalog.hpp"
#include "georeport/prompt/context.hpp"
#include "georeport/prompt/render.hpp"
#include "georeport/report/assemble.hpp"

namespace georeport::report {

// Loads the bytes of an uploaded image (store blob, test fixture...).
using ImageLoader = std::function<llm::ImagePayload(const ImageRef &)>;

struct GenerationContext {
    const prompt::PromptCatalog &catalog;
    const geomech::RatingTables &tables;
    const llm::Gateway &gateway;
    ImageLoader load_image;
    int max_output_tokens = 1024;
    double temperature = 0.0;
};

struct SectionOutput {
    SectionKind kind = SectionKind::objectives;
    std::optional<int> outcrop_id;
    std::string text;
    ReportSection section;
    prompt::RenderedPrompt prompt;
    llm::GenerationResponse response;
};

inline DocumentPart part_of(SectionKind k) {
    switch (k) {
    case SectionKind::objectives: return DocumentPart::objectives;
    case SectionKind::introduction_stage1:
    case SectionKind::introduction_stage2: return DocumentPart::introduction;
    case SectionKind::outcrop_description:
    case SectionKind::hand_sample_description:
    case SectionKind::schmidt_interpretation: return DocumentPart::results;
    case SectionKind::discussion_stage1:
    case SectionKind::discussion_stage2: return DocumentPart::discussion;
    case SectionKind::conclusions: return DocumentPart::conclusions;
    case SectionKind::preliminary: break;
    }
    throw ValidationError("kind", "preliminary is not a report section");
}

// Section preview built from one generated text; the same block builders as assembly.
inline ReportSection section_from_text(SectionKind kind, const std::string &text, std::optional<int> outcrop_id) {
    ReportSection s;
    s.part = part_of(kind);
    s.heading = std::string(heading_of(s.part));
    s.editable = true;
    if (kind == SectionKind::objectives) {
        s.blocks = objectives_blocks(text, s.warnings);
    } else if (kind == SectionKind::conclusions) {
        s.blocks.push_back(conclusions_block(text, s.warnings));
    } else {
        std::string prefix = outcrop_id ? "results.o" + std::to_string(*outcrop_id) + "." + std::string(to_string(kind))
                                        : std::string(to_string(s.part));
        s.blocks = paragraphs_from_text(prefix, text, kind, outcrop_id, s.warnings);
    }
    return s;
}

namespace generate_detail {

inline bool has_text(const GeneratedTexts &g, SectionKind k) {
    auto it = g.find(k);
    return it != g.end() && !trim(it->second).empty();
}

inline std::string where(SectionKind kind, std::optional<int> outcrop_id) {
    std::string s(to_string(kind));
    if (outcrop_id) s += " (outcrop " + std::to_string(*outcrop_id) + ")";
    return s;
}

inline void require_dependencies(SectionKind kind, const Project &p, const Outcrop *o) {
    auto missing = [&](const std::string &what) {
        throw DependencyError(std::string(to_string(kind)) + " needs " + what);
    };
    switch (kind) {
    case SectionKind::introduction_stage2:
        if (!has_text(p.generated, SectionKind::introduction_stage1)) missing("introduction_stage1 text");
        break;
    case SectionKind::outcrop_description:
        if (!o->image(ImageRole::outcrop)) missing("an outcrop image on outcrop " + std::to_string(o->id));
        break;
    case SectionKind::hand_sample_description:
        if (!o->image(ImageRole::hand_sample)) missing("a hand_sample image on outcrop " + std::to_string(o->id));
        break;
    case SectionKind::discussion_stage1:
        for (const auto &oc : p.outcrops) {
            if (!oc.rmr_input) missing("RMR input on outcrop " + std::to_string(oc.id));
            if (!has_text(oc.generated, SectionKind::outcrop_description))
                missing("outcrop_description text on outcrop " + std::to_string(oc.id));
        }
        break;
    case SectionKind::discussion_stage2:
        if (!has_text(p.generated, SectionKind::discussion_stage1)) missing("discussion_stage1 text");
        break;
    case SectionKind::conclusions:
        if (!has_text(p.generated, SectionKind::discussion_stage1) &&
            !has_text(p.generated, SectionKind::discussion_stage2))
            missing("discussion text");
        break;
    default: break;
    }
}

} // namespace generate_detail

// Renders the prompt for one section, calls the gateway and parses the reply.
// The project is not modified; see store_text.
inline SectionOutput generate_section(const GenerationContext &ctx, const Project &p, SectionKind kind,
                                      std::optional<int> outcrop_id = std::nullopt) {
    if (kind == SectionKind::preliminary) throw ValidationError("kind", "preliminary is not a report section");
    auto violations = validate_project(p, ValidationMode::report);
    if (!violations.empty()) throw ValidationError(violations.front().path, violations.front().message);

    const Outcrop *o = nullptr;
    if (is_per_outcrop(kind)) {
        if (!outcrop_id) throw ValidationError("outcrop_id", std::string(to_string(kind)) + " needs an outcrop id");
        o = p.find_outcrop(*outcrop_id);
        if (!o) throw NotFoundError("outcrop " + std::to_string(*outcrop_id));
    } else {
        outcrop_id.reset();
    }
    generate_detail::require_dependencies(kind, p, o);

    std::vector<ImageRef> refs;
    if (kind == SectionKind::outcrop_description) refs.push_back(*o->image(ImageRole::outcrop));
    if (kind == SectionKind::hand_sample_description) refs.push_back(*o->image(ImageRole::hand_sample));

    SectionOutput out;
    out.kind = kind;
    out.outcrop_id = outcrop_id;
    out.prompt = prompt::render_prompt(ctx.catalog, kind, prompt::section_context(kind, p, o, ctx.tables), refs, outcrop_id);

    llm::GenerationRequest req;
    req.prompt = out.prompt.text;
    req.max_output_tokens = ctx.max_output_tokens;
    req.temperature = ctx.temperature;
    for (const auto &ref : refs) {
        if (!ctx.load_image) throw DependencyError("no image loader configured for " + generate_detail::where(kind, outcrop_id));
        req.images.push_back(ctx.load_image(ref));
    }
    try {
        out.response = ctx.gateway.generate(req);
    } catch (const llm::GatewayError &e) {
        throw llm::GatewayError(e.code(), generate_detail::where(kind, outcrop_id) + ": " + e.what(), e.http_status(),
                                e.retry_after());
    }
    out.text = trim(out.response.text);
    try {
        out.section = section_from_text(kind, out.text, outcrop_id);
    } catch (const FormatError &e) {
        throw FormatError(generate_detail::where(kind, outcrop_id) + ": " + e.what());
    }
    if (out.response.truncated) out.section.warnings.push_back(generate_detail::where(kind, outcrop_id) + ": output truncated");
    return out;
}

inline void store_text(Project &p, SectionKind kind, std::optional<int> outcrop_id, std::string text) {
    if (is_per_outcrop(kind)) {
        auto *o = outcrop_id ? p.find_outcrop(*outcrop_id) : nullptr;
        if (!o) throw NotFoundError("outcrop " + (outcrop_id ? std::to_string(*outcrop_id) : std::string("(none)")));
        o->generated[kind] = std::move(text);
    } else {
        p.generated[kind] = std::move(text);
    }
}

// Every report section in dispatch order, storing each text before the next
// call so later prompts see earlier outputs.
inline std::vector<SectionOutput> generate_all(const GenerationContext &ctx, Project &p) {
    std::vector<SectionOutput> outputs;
    auto run = [&](SectionKind k, std::optional<int> id) {
        auto out = generate_section(ctx, p, k, id);
        store_text(p, k, id, out.text);
        outputs.push_back(std::move(out));
    };
    run(SectionKind::objectives, std::nullopt);
    run(SectionKind::introduction_stage1, std::nullopt);
    run(SectionKind::introduction_stage2, std::nullopt);
    for (const auto &o : p.outcrops)
        for (auto k : outcrop_kinds(o)) run(k, o.id);
    run(SectionKind::discussion_stage1, std::nullopt);
    run(SectionKind::discussion_stage2, std::nullopt);
    run(SectionKind::conclusions, std::nullopt);
    return outputs;
}

} // namespace georeport::report
