#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "georeport/core/csv.hpp"
#include "georeport/core/json_io.hpp"
#include "georeport/core/rock_names.hpp"
#include "georeport/core/utf8.hpp"
#include "georeport/eval/corpus.hpp"

namespace georeport::eval {

inline std::optional<RockType> parse_category(std::string_view text) { return parse_rock_type(text); }

// CSV with header id,category,candidate,reference (any column order).
inline std::vector<EvaluationPair> parse_pairs_csv(std::string_view text, const std::string &source = "<csv>") {
    auto rows = csv::parse(text, source);
    if (rows.empty()) throw SchemaError("id");
    const auto &header = rows.front();
    std::size_t c_id = csv::column(header, "id"), c_cat = csv::column(header, "category"),
                c_cand = csv::column(header, "candidate"), c_ref = csv::column(header, "reference");
    std::vector<EvaluationPair> pairs;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &row = rows[i];
        const std::string where = source + ":row " + std::to_string(i);
        if (row.size() != header.size()) throw ParseError(where, "expected " + std::to_string(header.size()) + " fields");
        auto cat = parse_category(row[c_cat]);
        if (!cat) throw ParseError(where + ".category", "unknown rock category '" + row[c_cat] + "'");
        pairs.push_back({row[c_id], *cat, row[c_cand], row[c_ref]});
    }
    return pairs;
}

// JSON array of {id, category, candidate, reference}, optionally wrapped in {"pairs": [...]}.
inline std::vector<EvaluationPair> parse_pairs_json(const Json &j) {
    const Json *arr = &j;
    std::string root = "$";
    if (j.is_object()) {
        arr = &json_io::get_array(j, "pairs", "$");
        root = "$.pairs";
    }
    if (!arr->is_array()) throw ParseError(root, "expected array of pairs");
    std::vector<EvaluationPair> pairs;
    for (std::size_t i = 0; i < arr->size(); ++i) {
        const auto path = json_io::index_path(root, i);
        const Json &p = (*arr)[i];
        EvaluationPair pair;
        pair.id = json_io::get_string(p, "id", path);
        auto cat_text = json_io::get_string(p, "category", path);
        auto cat = parse_category(cat_text);
        if (!cat) throw ParseError(path + ".category", "unknown rock category '" + cat_text + "'");
        pair.category = *cat;
        pair.candidate = json_io::get_string(p, "candidate", path);
        pair.reference = json_io::get_string(p, "reference", path);
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

inline std::vector<EvaluationPair> load_pairs(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error &e) {
            throw ParseError(path, e.what());
        }
        return parse_pairs_json(j);
    }
    return parse_pairs_csv(text, path);
}

inline Json write(const Histogram &h) {
    Json bins = Json::array();
    for (int i = 0; i < histogram_bins; ++i)
        bins.push_back(Json{{"lower", i / 10.0}, {"upper", (i + 1) / 10.0}, {"count", h[i]}});
    return bins;
}

inline Json write(const CorpusStats &s) {
    Json j;
    j["metric_config"] = s.metric_config;
    j["count"] = s.per_item.size();
    Json items = Json::array();
    for (const auto &item : s.per_item)
        items.push_back(Json{{"id", item.id},
                             {"category", to_string(item.category)},
                             {"bleu", item.scores.bleu},
                             {"rouge_l_f1", item.scores.rouge_l_f1}});
    j["per_item"] = std::move(items);
    j["mean_bleu"] = s.mean_bleu;
    j["median_bleu"] = s.median_bleu;
    j["mean_rouge"] = s.mean_rouge;
    j["median_rouge"] = s.median_rouge;
    j["histogram_bleu"] = write(s.histogram_bleu);
    j["histogram_rouge"] = write(s.histogram_rouge);
    j["regression"] = Json{{"slope", s.regression.slope},
                           {"intercept", s.regression.intercept},
                           {"r_squared", s.regression.r_squared}};
    Json cats = Json::object();
    for (const auto &[type, c] : s.per_category)
        cats[std::string(to_string(type))] = Json{{"count", c.count}, {"mean_bleu", c.mean_bleu}, {"mean_rouge", c.mean_rouge}};
    j["per_category"] = std::move(cats);
    return j;
}

// Arrays for plotting: BLEU/ROUGE-L scatter and both histograms.
inline Json scatter_plot_data(const CorpusStats &s) {
    Json points = Json::array();
    for (const auto &item : s.per_item)
        points.push_back(Json{{"id", item.id}, {"bleu", item.scores.bleu}, {"rouge_l_f1", item.scores.rouge_l_f1}});
    return Json{{"x", "bleu"},
                {"y", "rouge_l_f1"},
                {"points", std::move(points)},
                {"fit", {{"slope", s.regression.slope}, {"intercept", s.regression.intercept}}}};
}

inline Json histogram_plot_data(const CorpusStats &s) {
    return Json{{"bin_width", 0.1}, {"bleu", write(s.histogram_bleu)}, {"rouge_l_f1", write(s.histogram_rouge)}};
}

} // namespace georeport::eval
