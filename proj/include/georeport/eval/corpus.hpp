#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "georeport/core/domain.hpp"
#include "georeport/error.hpp"
#include "georeport/eval/metrics.hpp"

namespace georeport::eval {

struct EvaluationPair {
    std::string id;
    RockType category = RockType::sedimentary;
    std::string candidate;
    std::string reference;
    friend bool operator==(const EvaluationPair &, const EvaluationPair &) = default;
};

struct MetricScores {
    double bleu = 0;
    double rouge_l_f1 = 0;
    friend bool operator==(const MetricScores &, const MetricScores &) = default;
};

struct ItemScore {
    std::string id;
    RockType category = RockType::sedimentary;
    MetricScores scores;
};

inline constexpr int histogram_bins = 10; // width 0.1 over [0, 1]
using Histogram = std::array<int, histogram_bins>;

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

struct CategoryMeans {
    int count = 0;
    double mean_bleu = 0;
    double mean_rouge = 0;
};

struct CorpusStats {
    std::string metric_config;
    std::vector<ItemScore> per_item; // ordered by id
    double mean_bleu = 0, median_bleu = 0;
    double mean_rouge = 0, median_rouge = 0;
    Histogram histogram_bleu{};
    Histogram histogram_rouge{};
    LinearFit regression; // ROUGE-L on BLEU
    std::map<RockType, CategoryMeans> per_category;
};

// Bin index for a score in [0, 1]; 1.0 lands in the last bin.
inline int histogram_bin(double v) {
    int b = static_cast<int>(std::floor(v * histogram_bins));
    return std::clamp(b, 0, histogram_bins - 1);
}

inline Histogram histogram(const std::vector<double> &values) {
    Histogram h{};
    for (double v : values) ++h[histogram_bin(v)];
    return h;
}

inline double mean(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Centered second moments (sum of products of deviations).
struct Moments {
    double mean_x = 0, mean_y = 0, sxx = 0, syy = 0, sxy = 0;
};

inline Moments moments(const std::vector<double> &x, const std::vector<double> &y) {
    Moments m;
    m.mean_x = mean(x);
    m.mean_y = mean(y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - m.mean_x, dy = y[i] - m.mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

// Squared Pearson correlation; 0 when either variable is constant.
inline double pearson_r_squared(const std::vector<double> &x, const std::vector<double> &y) {
    auto m = moments(x, y);
    if (m.sxx == 0 || m.syy == 0) return 0.0;
    return (m.sxy * m.sxy) / (m.sxx * m.syy);
}

// Ordinary least squares y = slope * x + intercept.
inline LinearFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    auto m = moments(x, y);
    LinearFit fit;
    if (m.sxx == 0) {
        fit.intercept = m.mean_y;
        return fit;
    }
    fit.slope = m.sxy / m.sxx;
    fit.intercept = m.mean_y - fit.slope * m.mean_x;
    fit.r_squared = pearson_r_squared(x, y);
    return fit;
}

// 1 - SS_res / SS_tot for a fitted line; 0 for constant y.
inline double r_squared_from_residuals(const std::vector<double> &x, const std::vector<double> &y,
                                       const LinearFit &fit) {
    double my = mean(y), ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    if (ss_tot == 0) return 0.0;
    return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

inline MetricScores score_pair(const EvaluationPair &pair, const BleuConfig &cfg = {}) {
    auto cand = tokenize(pair.candidate);
    auto ref = tokenize(pair.reference);
    return {bleu(cand, ref, cfg), rouge_l_f1(cand, ref)};
}

// Aggregates per-item scores (sorted by id, stable) into corpus statistics.
inline CorpusStats summarize(std::vector<ItemScore> items, std::string metric_config = {}) {
    if (items.empty()) throw EmptyInputError("no scores to summarize");
    std::stable_sort(items.begin(), items.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
    CorpusStats s;
    s.metric_config = std::move(metric_config);
    std::vector<double> b, r;
    for (const auto &item : items) {
        b.push_back(item.scores.bleu);
        r.push_back(item.scores.rouge_l_f1);
        auto &cat = s.per_category[item.category];
        ++cat.count;
        cat.mean_bleu += item.scores.bleu;
        cat.mean_rouge += item.scores.rouge_l_f1;
    }
    for (auto &[type, cat] : s.per_category) {
        cat.mean_bleu /= cat.count;
        cat.mean_rouge /= cat.count;
    }
    s.per_item = std::move(items);
    s.mean_bleu = mean(b);
    s.median_bleu = median(b);
    s.mean_rouge = mean(r);
    s.median_rouge = median(r);
    s.histogram_bleu = histogram(b);
    s.histogram_rouge = histogram(r);
    s.regression = least_squares(b, r);
    return s;
}

inline CorpusStats evaluate_corpus(const std::vector<EvaluationPair> &pairs, const BleuConfig &cfg = {}) {
    if (pairs.empty()) throw EmptyInputError("evaluate_corpus needs at least one pair");
    std::vector<ItemScore> items;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &p = pairs[i];
        const std::string path = "pairs[" + std::to_string(i) + "]";
        if (p.candidate.empty()) throw ValidationError(path + ".candidate", "must not be empty");
        if (p.reference.empty()) throw ValidationError(path + ".reference", "must not be empty");
        items.push_back({p.id, p.category, score_pair(p, cfg)});
    }
    return summarize(std::move(items), cfg.describe() + "+rouge-l-f1");
}

} // namespace georeport::eval
