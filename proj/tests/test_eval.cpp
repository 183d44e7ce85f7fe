#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "georeport/eval/corpus.hpp"
#include "georeport/eval/pairs_io.hpp"
#include "support/eval_oracles.hpp"
#include "support/fixtures.hpp"

using namespace georeport;
using namespace georeport::eval;
using georeport::testing::brute_force_lcs;
using georeport::testing::oracle_bleu;
using georeport::testing::oracle_rouge_f1;

namespace {

Tokens letters(std::string_view s) {
    Tokens t;
    for (char c : s) t.emplace_back(1, c);
    return t;
}

Tokens random_tokens(std::mt19937 &rng, std::size_t max_len, int vocab) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> sym(0, vocab - 1);
    Tokens t(len(rng));
    for (auto &s : t) s = "w" + std::to_string(sym(rng));
    return t;
}

} // namespace

TEST(Tokenize, Examples) {
    EXPECT_EQ(tokenize("Roca ígnea."), (Tokens{"roca", "ígnea", "."}));
    EXPECT_TRUE(tokenize("").empty());
    EXPECT_EQ(tokenize("A  b\tc"), (Tokens{"a", "b", "c"}));
}

TEST(Tokenize, AccentedCapitalsFoldAndPunctuationSplits) {
    EXPECT_EQ(tokenize("ÍGNEA, Ñandú;¿Sí?"), (Tokens{"ígnea", ",", "ñandú", ";", "¿", "sí", "?"}));
    EXPECT_EQ(tokenize("  \n\r\t "), Tokens{});
    EXPECT_EQ(tokenize("a...b"), (Tokens{"a", ".", ".", ".", "b"}));
}

TEST(Tokenize, MalformedUtf8DoesNotThrow) {
    std::string bad = "roca \xC3 \xFF ok";
    auto t = tokenize(bad);
    ASSERT_FALSE(t.empty());
    EXPECT_EQ(t.back(), "ok");
}

TEST(Bleu, WorkedEightVsFour) {
    auto c = letters("abcdefgh"), r = letters("abcd");
    auto b = bleu_breakdown(c, r);
    const double expected = std::pow(4.0 / 8 * 3.0 / 7 * 2.0 / 6 * 1.0 / 5, 0.25);
    EXPECT_NEAR(b.score, expected, 1e-12);
    EXPECT_NEAR(b.score, 0.3457, 1e-4);
    EXPECT_EQ(b.brevity_penalty, 1.0);
    EXPECT_EQ(b.matches, (std::vector<int>{4, 3, 2, 1}));
    EXPECT_EQ(b.totals, (std::vector<int>{8, 7, 6, 5}));
}

TEST(Bleu, IdenticalTextsScoreExactlyOne) {
    for (std::string s : {"abcd", "abcdefgh", "aaaaaaa", "abcabcabc"}) {
        auto t = letters(s);
        EXPECT_EQ(bleu(t, t), 1.0) << s;
    }
    auto t = tokenize("Afloramiento de arenisca gris con estratificación paralela.");
    EXPECT_EQ(bleu(t, t), 1.0);
}

TEST(Bleu, ZeroFourGramOverlapIsNearZero) {
    auto c = letters("abxcdyef"), r = letters("abcdef");
    double s = bleu(c, r);
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, std::pow(1e-9, 0.25));
    EXPECT_NEAR(s, oracle_bleu(c, r), 1e-15);
}

TEST(Bleu, EmptyCandidateWarns) {
    auto b = bleu_breakdown({}, letters("abcd"));
    EXPECT_EQ(b.score, 0.0);
    EXPECT_TRUE(b.warning.has_value());
}

TEST(Bleu, ShortCandidateGetsBrevityPenalty) {
    auto c = letters("abcd"), r = letters("abcdefgh");
    auto b = bleu_breakdown(c, r);
    EXPECT_NEAR(b.brevity_penalty, std::exp(1.0 - 8.0 / 4.0), 1e-15);
    EXPECT_NEAR(b.score, b.brevity_penalty, 1e-15);
}

TEST(Bleu, MatchesFormulaOracleOnRandomPairs) {
    std::mt19937 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto c = random_tokens(rng, 14, 4), r = random_tokens(rng, 14, 4);
        EXPECT_NEAR(bleu(c, r), oracle_bleu(c, r), 1e-12);
    }
}

TEST(Bleu, InvariantUnderVocabularyRelabeling) {
    std::mt19937 rng(12);
    for (int i = 0; i < 500; ++i) {
        auto c = random_tokens(rng, 12, 5), r = random_tokens(rng, 12, 5);
        std::vector<int> perm{0, 1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng);
        auto relabel = [&](Tokens t) {
            for (auto &s : t) s = "v" + std::to_string(perm[std::stoi(s.substr(1))]);
            return t;
        };
        EXPECT_EQ(bleu(c, r), bleu(relabel(c), relabel(r)));
    }
}

TEST(RougeL, Examples) {
    EXPECT_EQ(rouge_l_f1(letters("abcd"), letters("abcd")), 1.0);
    EXPECT_EQ(rouge_l_f1(letters("abcd"), letters("wxyz")), 0.0);
    auto r = rouge_l_breakdown(letters("abcd"), letters("acbd"));
    EXPECT_EQ(r.lcs, 3u);
    EXPECT_DOUBLE_EQ(r.f1, 0.75);
    EXPECT_EQ(brute_force_lcs(letters("abcd"), letters("acbd")), 3u);
}

TEST(RougeL, EmptySideWarns) {
    auto r = rouge_l_breakdown({}, letters("ab"));
    EXPECT_EQ(r.f1, 0.0);
    EXPECT_TRUE(r.warning.has_value());
    EXPECT_TRUE(rouge_l_breakdown(letters("ab"), {}).warning.has_value());
}

TEST(RougeL, MatchesBruteForceLcsExactly) {
    std::mt19937 rng(13);
    for (int i = 0; i < 1000; ++i) {
        auto c = random_tokens(rng, 10, 4), r = random_tokens(rng, 10, 4);
        ASSERT_EQ(lcs_length(c, r), brute_force_lcs(c, r));
        ASSERT_EQ(rouge_l_f1(c, r), oracle_rouge_f1(c, r));
    }
}

TEST(RougeL, SelfScoreIsOne) {
    std::mt19937 rng(14);
    for (int i = 0; i < 300; ++i) {
        auto t = random_tokens(rng, 20, 6);
        if (t.empty()) continue;
        EXPECT_EQ(rouge_l_f1(t, t), 1.0);
        if (t.size() >= 4) EXPECT_EQ(bleu(t, t), 1.0);
    }
}

namespace {

std::vector<ItemScore> items_from(const std::vector<double> &b, const std::vector<double> &r) {
    std::vector<ItemScore> out;
    for (std::size_t i = 0; i < b.size(); ++i)
        out.push_back({"p" + std::to_string(i), RockType::igneous, {b[i], r[i]}});
    return out;
}

} // namespace

TEST(Corpus, MeanAndMedianOfSymmetricScores) {
    auto s = summarize(items_from({0.4, 0.5, 0.6}, {0.2, 0.7, 0.3}));
    EXPECT_DOUBLE_EQ(s.mean_bleu, 0.5);
    EXPECT_DOUBLE_EQ(s.median_bleu, 0.5);
}

TEST(Corpus, PerfectLinearityGivesUnitRSquared) {
    std::vector<double> b{0.1, 0.25, 0.4, 0.55, 0.9}, r;
    for (double x : b) r.push_back(0.5 * x + 0.3);
    auto s = summarize(items_from(b, r));
    EXPECT_NEAR(s.regression.r_squared, 1.0, 1e-12);
    EXPECT_NEAR(s.regression.slope, 0.5, 1e-12);
    EXPECT_NEAR(s.regression.intercept, 0.3, 1e-12);
}

TEST(Corpus, HistogramMatchesIntervalOracle) {
    auto h = histogram({0.41, 0.45, 0.62});
    EXPECT_EQ(h[4], 2);
    EXPECT_EQ(h[6], 1);
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v;
        for (int i = 0; i < 25; ++i) v.push_back(trial % 5 == 0 ? std::round(u(rng) * 10) / 10 : u(rng));
        auto got = histogram(v);
        auto want = georeport::testing::oracle_histogram(v);
        EXPECT_EQ(std::vector<int>(got.begin(), got.end()), want);
        int sum = 0;
        for (int c : got) sum += c;
        EXPECT_EQ(sum, 25);
    }
}

TEST(Corpus, RSquaredTwoWaysAgree) {
    std::mt19937 rng(16);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> x, y;
        for (int i = 0; i < 30; ++i) {
            x.push_back(u(rng));
            y.push_back(0.6 * x.back() + 0.4 * u(rng));
        }
        auto fit = least_squares(x, y);
        double a = pearson_r_squared(x, y), b = r_squared_from_residuals(x, y, fit);
        EXPECT_NEAR(a, b, 1e-12);
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, 1.0);
    }
}

TEST(Corpus, DegenerateRegressionIsZero) {
    auto s = summarize(items_from({0.3, 0.3, 0.3}, {0.1, 0.5, 0.9}));
    EXPECT_EQ(s.regression.r_squared, 0.0);
}

TEST(Corpus, OrderedByIdRegardlessOfInputOrder) {
    auto a = items_from({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6});
    auto b = a;
    std::reverse(b.begin(), b.end());
    auto sa = summarize(a), sb = summarize(b);
    ASSERT_EQ(sa.per_item.size(), sb.per_item.size());
    for (std::size_t i = 0; i < sa.per_item.size(); ++i) EXPECT_EQ(sa.per_item[i].id, sb.per_item[i].id);
    EXPECT_EQ(sa.mean_bleu, sb.mean_bleu);
}

TEST(Corpus, EmptyAndBlankInputs) {
    EXPECT_THROW(evaluate_corpus({}), EmptyInputError);
    std::vector<EvaluationPair> pairs{{"1", RockType::igneous, "roca", "roca"}, {"2", RockType::igneous, "", "x"}};
    try {
        evaluate_corpus(pairs);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.field(), "pairs[1].candidate");
    }
}

TEST(Corpus, SyntheticFixtureMatchesFrozenOracle) {
    auto pairs = load_pairs(georeport::testing::fixture_dir() + "/eval_pairs_30.csv");
    ASSERT_EQ(pairs.size(), 30u);
    std::ifstream in(georeport::testing::fixture_dir() + "/eval_pairs_30.expected.json");
    auto want = nlohmann::json::parse(in);
    auto s = evaluate_corpus(pairs);

    ASSERT_EQ(s.per_item.size(), want["ids"].size());
    for (std::size_t i = 0; i < s.per_item.size(); ++i) {
        EXPECT_EQ(s.per_item[i].id, want["ids"][i].get<std::string>());
        EXPECT_NEAR(s.per_item[i].scores.bleu, want["bleu"][i].get<double>(), 1e-12);
        EXPECT_NEAR(s.per_item[i].scores.rouge_l_f1, want["rouge_l_f1"][i].get<double>(), 1e-12);
    }
    EXPECT_NEAR(s.mean_bleu, want["mean_bleu"].get<double>(), 1e-9);
    EXPECT_NEAR(s.median_bleu, want["median_bleu"].get<double>(), 1e-9);
    EXPECT_NEAR(s.mean_rouge, want["mean_rouge"].get<double>(), 1e-9);
    EXPECT_NEAR(s.median_rouge, want["median_rouge"].get<double>(), 1e-9);
    EXPECT_EQ(std::vector<int>(s.histogram_bleu.begin(), s.histogram_bleu.end()),
              want["histogram_bleu"].get<std::vector<int>>());
    EXPECT_EQ(std::vector<int>(s.histogram_rouge.begin(), s.histogram_rouge.end()),
              want["histogram_rouge"].get<std::vector<int>>());
    EXPECT_NEAR(s.regression.slope, want["slope"].get<double>(), 1e-9);
    EXPECT_NEAR(s.regression.intercept, want["intercept"].get<double>(), 1e-9);
    EXPECT_NEAR(s.regression.r_squared, want["r_squared"].get<double>(), 1e-9);
    EXPECT_EQ(s.per_category.at(RockType::igneous).count, 10);
    EXPECT_EQ(s.metric_config, "bleu-4/uniform/eps-floor+rouge-l-f1");
}

TEST(PairsIo, CsvAndJsonAgree) {
    auto from_csv = parse_pairs_csv("id,category,candidate,reference\n"
                                    "a,Ígnea,\"Roca, gris\",roca gris\n"
                                    "b,metamorphic,x y,x z\n");
    Json j = Json::parse(R"({"pairs":[{"id":"a","category":"igneous","candidate":"Roca, gris","reference":"roca gris"},
                                      {"id":"b","category":"Metamórfica","candidate":"x y","reference":"x z"}]})");
    EXPECT_EQ(from_csv, parse_pairs_json(j));
    EXPECT_EQ(parse_category("SEDIMENTARIA"), RockType::sedimentary);
    EXPECT_EQ(parse_category("ignea"), RockType::igneous);
    EXPECT_FALSE(parse_category("volcanic").has_value());
}

TEST(PairsIo, MissingColumnAndBadCategory) {
    EXPECT_THROW(parse_pairs_csv("id,category,candidate\nx,igneous,a\n"), SchemaError);
    EXPECT_THROW(parse_pairs_csv("id,category,candidate,reference\nx,lava,a,b\n"), Error);
}

TEST(PairsIo, StatsJsonShape) {
    auto s = summarize(items_from({0.41, 0.45, 0.62}, {0.5, 0.6, 0.7}));
    auto j = write(s);
    EXPECT_EQ(j["histogram_bleu"].size(), 10u);
    EXPECT_EQ(j["histogram_bleu"][4]["count"], 2);
    EXPECT_EQ(j["per_item"].size(), 3u);
    EXPECT_EQ(scatter_plot_data(s)["points"].size(), 3u);
}
