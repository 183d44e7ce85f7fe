#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "georeport/store/dataset.hpp"
#include "georeport/store/project_store.hpp"
#include "support/fixtures.hpp"

using namespace georeport;
using namespace georeport::store;
using georeport::testing::fixture_dir;
using georeport::testing::make_project;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("georeport-store-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string header = "id,rock_type,geology,color,main_structures,mass_quality,joint_description\n";

} // namespace

TEST(Dataset, ThirtyRowsAreBalanced) {
    auto rows = load_dataset(fixture_dir() + "/dataset_30.csv");
    ASSERT_EQ(rows.size(), 30u);
    auto counts = class_counts(rows);
    EXPECT_EQ(counts[RockType::igneous], 10);
    EXPECT_EQ(counts[RockType::sedimentary], 10);
    EXPECT_EQ(counts[RockType::metamorphic], 10);
    EXPECT_EQ(rows[0].id, "Ígnea 1");
    EXPECT_EQ(rows[29].id, "Metamórfica 10");
}

TEST(Dataset, LoadingIsIdempotent) {
    auto a = load_dataset(fixture_dir() + "/dataset_30.csv");
    auto b = load_dataset(fixture_dir() + "/dataset_30.csv");
    EXPECT_EQ(a, b);
}

TEST(Dataset, MissingColumnNamesIt) {
    std::string csv = "id,rock_type,geology,main_structures,mass_quality,joint_description\nÍgnea 1,igneous,g,s,q,j\n";
    try {
        parse_dataset(csv);
        FAIL();
    } catch (const SchemaError &e) {
        EXPECT_EQ(e.column(), "color");
    }
}

TEST(Dataset, DuplicateIdIsAnIntegrityError) {
    std::string csv = header + "Ígnea 1,igneous,g,c,s,q,j\nÍgnea 1,igneous,g,c,s,q,j\n";
    EXPECT_THROW(parse_dataset(csv), IntegrityError);
}

TEST(Dataset, PrefixMustMatchDeclaredType) {
    EXPECT_THROW(parse_dataset(header + "Ígnea 1,sedimentary,g,c,s,q,j\n"), IntegrityError);
    EXPECT_THROW(parse_dataset(header + "Volcánica 1,igneous,g,c,s,q,j\n"), IntegrityError);
}

TEST(Dataset, ConfigurableHeader) {
    DatasetColumns es{"ID", "Tipo de roca", "Geología", "Color predominante", "Estructuras principales",
                      "Calidad del macizo rocoso", "Descripción de juntas"};
    std::string csv = "ID,Tipo de roca,Geología,Color predominante,Estructuras principales,Calidad del macizo rocoso,"
                      "Descripción de juntas\nMetamórfica 4,Metamórfica,g,c,s,q,j\n";
    auto rows = parse_dataset(csv, es);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].rock_type, RockType::metamorphic);
}

// Oracle: a name maps to its class iff it is one of the spellings listed here.
TEST(Dataset, IdPrefixParseMatchesOracle) {
    const std::vector<std::pair<std::string, RockType>> names{
        {"Ígnea", RockType::igneous},           {"ígnea", RockType::igneous},
        {"Ignea", RockType::igneous},           {"IGNEA", RockType::igneous},
        {"Sedimentaria", RockType::sedimentary}, {"sedimentaria", RockType::sedimentary},
        {"Metamórfica", RockType::metamorphic}, {"Metamorfica", RockType::metamorphic},
        {"metamorphic", RockType::metamorphic}, {"Igneous", RockType::igneous}};
    const std::vector<std::string> bad{"Volcánica", "Roca", "Ígneas", "Meta", ""};
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        int n = static_cast<int>(rng() % 1000);
        if (rng() % 4 == 0) {
            auto id = bad[rng() % bad.size()] + " " + std::to_string(n);
            EXPECT_FALSE(rock_type_from_id(id).has_value()) << id;
        } else {
            const auto &[name, type] = names[rng() % names.size()];
            auto id = name + std::string(rng() % 2 ? " " : "  ") + std::to_string(n);
            EXPECT_EQ(rock_type_from_id(id), type) << id;
        }
    }
    EXPECT_EQ(rock_type_from_id("Ígnea 3"), RockType::igneous);
    EXPECT_FALSE(rock_type_from_id("123").has_value());
}

TEST(Store, RoundTripsAFullProject) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto p = make_project(3);
    p.generated[SectionKind::objectives] = "a\nb\nc";
    p.outcrops[1].generated[SectionKind::outcrop_description] = "Descripción \"citada\" con ñ.";
    auto id = s.create(p);
    EXPECT_EQ(id.size(), 16u);
    EXPECT_EQ(s.load(id), p);
    ProjectStore reopened(dir.path);
    EXPECT_EQ(reopened.load(id), p);
}

TEST(Store, UnknownIdIsNotFound) {
    TempDir dir;
    ProjectStore s(dir.path);
    EXPECT_THROW(s.load("0123456789abcdef"), NotFoundError);
    EXPECT_THROW(s.load("../etc/passwd"), NotFoundError);
}

TEST(Store, CorruptDocumentReportsPath) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto id = s.create(make_project(1));
    auto file = dir.path / "projects" / (id + ".json");
    {
        std::ofstream f(file);
        f << R"({"title": "x", "outcrops": [{"id": "uno"}]})";
    }
    try {
        s.load(id);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find(file.string()), std::string::npos) << e.what();
    }
}

TEST(Store, InvalidProjectIsNotSaved) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto p = make_project(1);
    p.title = "";
    EXPECT_THROW(s.create(p), ValidationError);
    EXPECT_TRUE(s.list().empty());
}

TEST(Store, ConcurrentSavesToDistinctIdsAllLand) {
    TempDir dir;
    ProjectStore s(dir.path);
    std::vector<std::string> ids(16);
    std::vector<std::thread> threads;
    for (int i = 0; i < 16; ++i)
        threads.emplace_back([&, i] {
            auto p = make_project(1 + i % 3);
            p.title = "Proyecto " + std::to_string(i);
            ids[i] = s.create(p);
        });
    for (auto &t : threads) t.join();

    std::vector<std::string> listed;
    for (const auto &e : fs::directory_iterator(dir.path / "projects")) listed.push_back(e.path().filename().string());
    std::sort(listed.begin(), listed.end());
    std::vector<std::string> expected;
    for (const auto &id : ids) expected.push_back(id + ".json");
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(listed, expected);
    for (int i = 0; i < 16; ++i) EXPECT_EQ(s.load(ids[i]).title, "Proyecto " + std::to_string(i));
}

TEST(Store, ReadersNeverSeeHalfWrittenDocuments) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto id = s.create(make_project(1));
    std::atomic<bool> stop{false};
    std::atomic<int> failures{0}, reads{0};
    std::thread reader([&] {
        while (!stop) {
            try {
                auto p = s.load(id);
                if (p.outcrops.empty()) ++failures;
            } catch (...) {
                ++failures;
            }
            ++reads;
        }
    });
    std::vector<std::thread> writers;
    for (int w = 0; w < 4; ++w)
        writers.emplace_back([&, w] {
            for (int i = 0; i < 25; ++i) s.save(id, make_project(1 + (w + i) % 3));
        });
    for (auto &t : writers) t.join();
    stop = true;
    reader.join();
    EXPECT_EQ(failures, 0);
    EXPECT_GT(reads, 0);
}

TEST(Store, StrayTempFileDoesNotAffectReads) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto p = make_project(1);
    auto id = s.create(p);
    {
        std::ofstream f(dir.path / "projects" / (id + ".json.tmp.1.0"));
        f << "{\"title\": \"tru";
    }
    EXPECT_EQ(s.load(id), p);
    EXPECT_EQ(s.list(), std::vector<std::string>{id});
}

TEST(Store, UpdateIsSerialized) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto id = s.create(make_project(1));
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i)
        threads.emplace_back([&] {
            for (int k = 0; k < 10; ++k) s.update(id, [](Project &p) { p.authors.push_back("x"); });
        });
    for (auto &t : threads) t.join();
    EXPECT_EQ(s.load(id).authors.size(), 2u + 80u);
}

TEST(Store, BlobsAreContentAddressed) {
    TempDir dir;
    ProjectStore s(dir.path);
    auto a = s.put_blob("abc");
    EXPECT_EQ(a.key, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(a.byte_length, 3u);
    EXPECT_EQ(s.put_blob("abc").key, a.key);
    EXPECT_EQ(s.get_blob(a.key), "abc");
    EXPECT_FALSE(s.get_blob("missing").has_value());
}
