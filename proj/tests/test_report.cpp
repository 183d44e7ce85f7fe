#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <set>

#include "georeport/report/export.hpp"
#include "support/report_harness.hpp"

using namespace georeport;
using namespace georeport::report;
using georeport::testing::make_project;
using georeport::testing::MockPipeline;
using georeport::testing::tables;

namespace {

// Heading list written out by hand, independent of heading_of().
const std::vector<std::string> expected_headings{"Portada",         "1. Introducción", "2. Objetivos",
                                                 "3. Datos de campo", "4. Resultados",   "5. Discusión",
                                                 "6. Conclusiones", "Anexo A",         "Anexo B"};

std::vector<std::string> html_h2(const std::string &html) {
    static const std::regex h2("<h2>([^<]*)</h2>");
    std::vector<std::string> out;
    for (auto it = std::sregex_iterator(html.begin(), html.end(), h2); it != std::sregex_iterator(); ++it)
        out.push_back((*it)[1].str());
    return out;
}

std::vector<std::string> lines_of(const std::string &s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void fill_generated(Project &p) {
    p.generated[SectionKind::objectives] = "Caracterizar el macizo.\nDescribir los afloramientos.\nCalcular el RMR.";
    p.generated[SectionKind::introduction_stage1] = "Introducción preliminar.";
    p.generated[SectionKind::introduction_stage2] = "Primer párrafo.\n\nSegundo párrafo.";
    p.generated[SectionKind::discussion_stage1] = "Discusión preliminar.";
    p.generated[SectionKind::discussion_stage2] = "Discusión final.";
    p.generated[SectionKind::conclusions] = "1. Uno.\n2. Dos.\n3. Tres.\n4. Cuatro.";
    for (auto &o : p.outcrops) {
        o.generated[SectionKind::outcrop_description] = "Afloramiento descrito.";
        o.generated[SectionKind::hand_sample_description] = "Muestra descrita.";
        o.generated[SectionKind::schmidt_interpretation] = "Esclerómetro interpretado.";
    }
}

} // namespace

TEST(Generate, ObjectivesGiveOneGeneralAndTwoSpecific) {
    MockPipeline m;
    auto p = make_project(1);
    auto out = generate_section(m.ctx, p, SectionKind::objectives);
    ASSERT_EQ(out.section.blocks.size(), 3u);
    EXPECT_EQ(out.section.blocks[0].id, "objectives.general");
    EXPECT_EQ(out.section.blocks[1].id, "objectives.specific1");
    EXPECT_EQ(out.section.blocks[2].id, "objectives.specific2");
    EXPECT_TRUE(out.section.editable);
    EXPECT_EQ(out.section.part, DocumentPart::objectives);
    EXPECT_NE(out.prompt.text.find(p.title), std::string::npos);
}

TEST(Generate, StageTwoNeedsStageOne) {
    MockPipeline m;
    auto p = make_project(1);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::introduction_stage2), DependencyError);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::discussion_stage2), DependencyError);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::conclusions), DependencyError);
}

TEST(Generate, OutcropDescriptionNeedsOutcropImage) {
    MockPipeline m;
    auto p = make_project(1);
    p.outcrops[0].images.erase(p.outcrops[0].images.begin());
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::outcrop_description, 1), DependencyError);
    EXPECT_NO_THROW(generate_section(m.ctx, p, SectionKind::hand_sample_description, 1));
}

TEST(Generate, DiscussionNeedsResultsAndRmr) {
    MockPipeline m;
    auto p = make_project(2);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::discussion_stage1), DependencyError);
    for (auto &o : p.outcrops) o.generated[SectionKind::outcrop_description] = "Texto.";
    EXPECT_NO_THROW(generate_section(m.ctx, p, SectionKind::discussion_stage1));
    p.outcrops[1].rmr_input.reset();
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::discussion_stage1), DependencyError);
}

TEST(Generate, PerOutcropKindsNeedAnExistingOutcrop) {
    MockPipeline m;
    auto p = make_project(1);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::outcrop_description), ValidationError);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::outcrop_description, 7), NotFoundError);
    EXPECT_THROW(generate_section(m.ctx, p, SectionKind::preliminary), ValidationError);
}

TEST(Generate, GatewayErrorsCarrySectionContext) {
    auto cfg = georeport::testing::mock_provider_config("mock-auth-fail");
    cfg.mock_script = {"auth"};
    MockPipeline m(cfg);
    auto p = make_project(1);
    try {
        generate_section(m.ctx, p, SectionKind::hand_sample_description, 1);
        FAIL() << "expected GatewayError";
    } catch (const llm::GatewayError &e) {
        EXPECT_EQ(e.code(), llm::GatewayErrorCode::auth);
        EXPECT_NE(std::string(e.what()).find("hand_sample_description (outcrop 1)"), std::string::npos);
    }
}

TEST(Generate, LongParagraphsGetWarnings) {
    std::string longp;
    for (int i = 0; i < 101; ++i) longp += "palabra ";
    auto s = section_from_text(SectionKind::introduction_stage2, longp + "\n\nCorto.", std::nullopt);
    ASSERT_EQ(s.warnings.size(), 1u);
    EXPECT_EQ(s.warnings[0], "introduction.p1: 101 words (limit 100)");
    std::string exactly100;
    for (int i = 0; i < 100; ++i) exactly100 += "w ";
    EXPECT_TRUE(section_from_text(SectionKind::discussion_stage1, exactly100, std::nullopt).warnings.empty());
}

TEST(Assemble, OneOutcropProjectHasAllSectionsInOrder) {
    MockPipeline m;
    auto p = make_project(1);
    auto d = m.run(p);
    ASSERT_EQ(d.sections.size(), 9u);
    for (std::size_t i = 0; i < d.sections.size(); ++i) EXPECT_EQ(d.sections[i].heading, expected_headings[i]);
    std::set<DocumentPart> parts;
    for (const auto &s : d.sections) EXPECT_TRUE(parts.insert(s.part).second);

    const auto *obj = d.section(DocumentPart::objectives);
    ASSERT_EQ(obj->blocks.size(), 3u);
    const auto *concl = d.section(DocumentPart::conclusions);
    ASSERT_EQ(concl->blocks.size(), 1u);
    EXPECT_GE(concl->blocks[0].items.size(), 4u);
    EXPECT_LE(concl->blocks[0].items.size(), 6u);
}

TEST(Assemble, FieldDataEmbedsChartData) {
    auto p = make_project(2);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    const auto *fd = d.section(DocumentPart::field_data);
    int nets = 0, bars = 0, images = 0;
    for (const auto &b : fd->blocks) {
        if (!b.figure) continue;
        if (b.figure->kind == "stereonet") {
            ++nets;
            EXPECT_EQ(b.figure->data.at("poles").size(), 3u);
            EXPECT_EQ(b.figure->render_hint, "equal_area_lower_hemisphere");
        }
        if (b.figure->kind == "bar_chart") {
            ++bars;
            EXPECT_EQ(b.figure->data.at("bars")[0].at("count"), 12);
        }
        if (b.figure->kind == "image") ++images;
    }
    EXPECT_EQ(nets, 2);
    EXPECT_EQ(bars, 2);
    EXPECT_EQ(images, 4);
    EXPECT_EQ(fd->blocks[0].table->rows.size(), 2u);
    EXPECT_EQ(fd->blocks[1].table->rows.size(), 2u);
}

TEST(Assemble, AnnexBReportsExtremesAcrossThreeOutcrops) {
    auto p = make_project(3);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    std::vector<int> totals;
    for (const auto &o : p.outcrops) totals.push_back(geomech::compute_rmr(*o.rmr_input, tables()).adjusted_total);
    int mx = *std::max_element(totals.begin(), totals.end());
    int mn = *std::min_element(totals.begin(), totals.end());
    ASSERT_NE(mx, mn);
    const auto *b = d.section(DocumentPart::annex_b);
    const Block *ext = nullptr;
    for (const auto &blk : b->blocks)
        if (blk.id == "annex_b.extremes") ext = &blk;
    ASSERT_NE(ext, nullptr);
    EXPECT_EQ(ext->fields[0].first, "RMR máximo");
    EXPECT_EQ(ext->fields[0].second.rfind(std::to_string(mx) + " ", 0), 0u);
    EXPECT_EQ(ext->fields[1].second.rfind(std::to_string(mn) + " ", 0), 0u);
    EXPECT_EQ(b->blocks.back().table->rows.size(), tables().rmr.classes.size());
    EXPECT_EQ(d.section(DocumentPart::annex_a)->blocks.size(), 3u);
}

TEST(Assemble, AnnexAListsEveryRmrParameter) {
    auto p = make_project(1);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    const auto &t = *d.section(DocumentPart::annex_a)->blocks.at(0).table;
    auto r = geomech::compute_rmr(*p.outcrops[0].rmr_input, tables());
    int sum = 0;
    for (std::size_t i = 1; i <= 9; ++i) sum += std::stoi(t.rows[i][2]);
    EXPECT_EQ(sum, r.basic_total);
    EXPECT_EQ(t.rows[10][2], std::to_string(r.basic_total));
    EXPECT_EQ(t.rows[13][1], r.rmr_class.label);
}

TEST(Assemble, MissingConclusionsIsAnAssemblyError) {
    auto p = make_project(1);
    fill_generated(p);
    p.generated.erase(SectionKind::conclusions);
    try {
        assemble_report(p, tables(), "t");
        FAIL();
    } catch (const AssemblyError &e) {
        EXPECT_EQ(e.gaps(), std::vector<std::string>{"conclusions"});
    }
}

TEST(Assemble, AllGapsAreListed) {
    auto p = make_project(2);
    fill_generated(p);
    p.generated.erase(SectionKind::objectives);
    p.outcrops[1].generated.erase(SectionKind::hand_sample_description);
    p.outcrops[0].rmr_input.reset();
    try {
        assemble_report(p, tables(), "t");
        FAIL();
    } catch (const AssemblyError &e) {
        EXPECT_EQ(e.gaps(), (std::vector<std::string>{"objectives", "outcrop 2: hand_sample_description",
                                                      "outcrop 1: rmr_input"}));
    }
}

TEST(Assemble, StageOneTextIsUsedWhenStageTwoIsAbsent) {
    auto p = make_project(1);
    fill_generated(p);
    p.generated.erase(SectionKind::discussion_stage2);
    auto d = assemble_report(p, tables(), "t");
    EXPECT_EQ(d.section(DocumentPart::discussion)->blocks[0].text, "Discusión preliminar.");
    EXPECT_EQ(d.section(DocumentPart::discussion)->blocks[0].source, SectionKind::discussion_stage1);
}

TEST(Assemble, ResultsFollowOutcropIdOrder) {
    auto p = make_project(3);
    std::swap(p.outcrops[0], p.outcrops[2]);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    std::vector<int> seen;
    for (const auto &b : d.section(DocumentPart::results)->blocks)
        if (seen.empty() || seen.back() != *b.outcrop_id) seen.push_back(*b.outcrop_id);
    EXPECT_EQ(seen, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(d.section(DocumentPart::results)->blocks.size(), 9u);
}

TEST(Assemble, BadObjectivesOrConclusionsFormat) {
    auto p = make_project(1);
    fill_generated(p);
    p.generated[SectionKind::conclusions] = "1. Solo.\n2. Dos.";
    EXPECT_THROW(assemble_report(p, tables(), "t"), FormatError);
    fill_generated(p);
    p.generated[SectionKind::objectives] = "Uno.\nDos.";
    EXPECT_THROW(assemble_report(p, tables(), "t"), FormatError);
}

TEST(Pipeline, MockRunIsDeterministic) {
    auto p1 = make_project(3);
    auto p2 = make_project(3);
    MockPipeline a, b;
    auto d1 = a.run(p1);
    auto d2 = b.run(p2);
    EXPECT_EQ(export_json(d1), export_json(d2));
    EXPECT_EQ(export_html(d1), export_html(d2));
    EXPECT_EQ(p1, p2);
}

TEST(Export, JsonRoundTrips) {
    MockPipeline m;
    auto p = make_project(2);
    auto d = m.run(p);
    EXPECT_EQ(import_json(export_json(d)), d);
    EXPECT_EQ(export_json(import_json(export_json(d))), export_json(d));
}

TEST(Export, HtmlHeadingsFollowDocumentOrder) {
    MockPipeline m;
    auto p = make_project(1);
    auto html = export_html(m.run(p));
    EXPECT_EQ(html_h2(html), expected_headings);
    EXPECT_NE(html.find("@media print"), std::string::npos);
    EXPECT_NE(html.find("<svg"), std::string::npos);
    EXPECT_EQ(html.find("<link"), std::string::npos);
    EXPECT_EQ(html.find("<script"), std::string::npos);
    EXPECT_EQ(html.find("src=\"http"), std::string::npos);
}

TEST(Export, HtmlEmbedsResolvedImages) {
    auto p = make_project(1);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    auto html = export_html(d, [](const Figure &f) -> std::optional<std::string> {
        if (f.image_key == "sha256-a1") return std::string("abc");
        return std::nullopt;
    });
    EXPECT_NE(html.find("src=\"data:image/jpeg;base64,YWJj\""), std::string::npos);
    EXPECT_NE(html.find("class=\"placeholder\""), std::string::npos);
}

TEST(Export, HtmlEscapesText) {
    auto p = make_project(1);
    fill_generated(p);
    p.generated[SectionKind::discussion_stage2] = "a < b & \"c\"";
    auto html = export_html(assemble_report(p, tables(), "t"));
    EXPECT_NE(html.find("<p>a &lt; b &amp; &quot;c&quot;</p>"), std::string::npos);
}

TEST(Export, MarkdownConclusionsAreAnOrderedList) {
    auto p = make_project(1);
    fill_generated(p);
    p.generated[SectionKind::conclusions] = "1. Uno.\n2. Dos.\n3. Tres.\n4. Cuatro.\n5. Cinco.";
    auto md = export_markdown(assemble_report(p, tables(), "t"));
    auto at = md.find("## 6. Conclusiones");
    ASSERT_NE(at, std::string::npos);
    EXPECT_NE(md.find("\n1. Uno.\n2. Dos.\n3. Tres.\n4. Cuatro.\n5. Cinco.\n", at), std::string::npos);
    EXPECT_EQ(md.rfind("# ", 0), 0u);
    std::size_t h2 = 0;
    for (const auto &l : lines_of(md)) h2 += l.rfind("## ", 0) == 0;
    EXPECT_EQ(h2, 9u);
}

TEST(Export, UnknownFormatIsRejected) {
    auto p = make_project(1);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    EXPECT_THROW(export_document(d, "pdf"), ValidationError);
    EXPECT_EQ(export_document(d, "markdown"), export_markdown(d));
    EXPECT_EQ(export_document(d, ExportFormat::json), export_json(d));
}

// Editing one paragraph changes exactly one HTML line and one JSON block.
TEST(Export, EditChangesOnlyThatBlock) {
    MockPipeline m;
    auto p = make_project(2);
    const auto base = m.run(p);
    std::vector<std::string> editable;
    for (const auto &s : base.sections)
        for (const auto &b : s.blocks)
            if (s.editable && b.type == BlockType::paragraph) editable.push_back(b.id);
    ASSERT_GT(editable.size(), 5u);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto &id = editable[rng() % editable.size()];
        auto edited = base;
        edit_block(edited, id, "Texto editado número " + std::to_string(trial) + ".");

        auto before = lines_of(export_html(base));
        auto after = lines_of(export_html(edited));
        ASSERT_EQ(before.size(), after.size());
        int changed = 0;
        for (std::size_t i = 0; i < before.size(); ++i)
            if (before[i] != after[i]) {
                ++changed;
                EXPECT_NE(after[i].find("data-block=\"" + id + "\""), std::string::npos);
            }
        EXPECT_EQ(changed, 1) << id;

        int blocks_changed = 0;
        for (std::size_t s = 0; s < base.sections.size(); ++s)
            for (std::size_t b = 0; b < base.sections[s].blocks.size(); ++b)
                blocks_changed += !(base.sections[s].blocks[b] == edited.sections[s].blocks[b]);
        EXPECT_EQ(blocks_changed, 1);
    }
}

TEST(Export, EditRejectsNonEditableBlocks) {
    auto p = make_project(1);
    fill_generated(p);
    auto d = assemble_report(p, tables(), "t");
    EXPECT_THROW(edit_block(d, "field_data.outcrops", "x"), ValidationError);
    EXPECT_THROW(edit_block(d, "no.such.block", "x"), NotFoundError);
    EXPECT_THROW(edit_block(d, "conclusions.list", "1. a\n2. b"), ValidationError);
    edit_block(d, "conclusions.list", "1. a\n2. b\n3. c\n4. d\n5. e");
    EXPECT_EQ(d.section(DocumentPart::conclusions)->blocks[0].items.size(), 5u);
}
