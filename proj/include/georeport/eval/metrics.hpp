#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "georeport/eval/tokenize.hpp"

namespace georeport::eval {

// BLEU variant is part of the reported configuration so corpus numbers can be
// reproduced per variant.
struct BleuConfig {
    int max_order = 4;
    double epsilon = 1e-9; // floor applied to zero n-gram precisions

    std::string describe() const {
        return "bleu-" + std::to_string(max_order) + "/uniform/eps-floor";
    }
};

struct BleuBreakdown {
    double score = 0;
    std::vector<double> precisions;
    std::vector<int> matches;
    std::vector<int> totals;
    double brevity_penalty = 0;
    std::size_t candidate_length = 0;
    std::size_t reference_length = 0;
    std::optional<std::string> warning;
};

namespace metrics_detail {

using Ids = std::vector<int>;

inline std::pair<Ids, Ids> intern(const Tokens &a, const Tokens &b) {
    std::unordered_map<std::string, int> vocab;
    auto map = [&](const Tokens &toks) {
        Ids ids;
        ids.reserve(toks.size());
        for (const auto &t : toks) ids.push_back(vocab.emplace(t, static_cast<int>(vocab.size())).first->second);
        return ids;
    };
    Ids x = map(a);
    Ids y = map(b);
    return {std::move(x), std::move(y)};
}

inline std::map<Ids, int> ngram_counts(const Ids &toks, int n) {
    std::map<Ids, int> counts;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) ++counts[Ids(toks.begin() + i, toks.begin() + i + n)];
    return counts;
}

} // namespace metrics_detail

// Sentence BLEU against a single reference: clipped n-gram precisions up to
// max_order with uniform weights, brevity penalty min(1, exp(1 - r/c)).
inline BleuBreakdown bleu_breakdown(const Tokens &candidate, const Tokens &reference, const BleuConfig &cfg = {}) {
    BleuBreakdown b;
    b.candidate_length = candidate.size();
    b.reference_length = reference.size();
    if (candidate.empty()) {
        b.warning = "empty candidate";
        return b;
    }
    auto [cand, ref] = metrics_detail::intern(candidate, reference);
    double log_sum = 0;
    for (int n = 1; n <= cfg.max_order; ++n) {
        auto c_counts = metrics_detail::ngram_counts(cand, n);
        auto r_counts = metrics_detail::ngram_counts(ref, n);
        int match = 0, total = 0;
        for (const auto &[gram, count] : c_counts) {
            total += count;
            auto it = r_counts.find(gram);
            if (it != r_counts.end()) match += std::min(count, it->second);
        }
        double p = total > 0 ? static_cast<double>(match) / total : 0.0;
        b.matches.push_back(match);
        b.totals.push_back(total);
        b.precisions.push_back(p);
        log_sum += std::log(std::max(p, cfg.epsilon));
    }
    double c = static_cast<double>(cand.size());
    double r = static_cast<double>(ref.size());
    b.brevity_penalty = std::min(1.0, std::exp(1.0 - r / c));
    b.score = b.brevity_penalty * std::exp(log_sum / cfg.max_order);
    return b;
}

inline double bleu(const Tokens &candidate, const Tokens &reference, const BleuConfig &cfg = {}) {
    return bleu_breakdown(candidate, reference, cfg).score;
}

struct RougeBreakdown {
    std::size_t lcs = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::optional<std::string> warning;
};

inline std::size_t lcs_length(const Tokens &a, const Tokens &b) {
    auto [x, y] = metrics_detail::intern(a, b);
    std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
    for (std::size_t i = 1; i <= x.size(); ++i) {
        for (std::size_t j = 1; j <= y.size(); ++j)
            cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[y.size()];
}

// ROUGE-L with beta = 1, no stemming or stop-word removal.
inline RougeBreakdown rouge_l_breakdown(const Tokens &candidate, const Tokens &reference) {
    RougeBreakdown r;
    if (candidate.empty() || reference.empty()) {
        r.warning = candidate.empty() ? "empty candidate" : "empty reference";
        return r;
    }
    r.lcs = lcs_length(candidate, reference);
    r.precision = static_cast<double>(r.lcs) / candidate.size();
    r.recall = static_cast<double>(r.lcs) / reference.size();
    r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

inline double rouge_l_f1(const Tokens &candidate, const Tokens &reference) {
    return rouge_l_breakdown(candidate, reference).f1;
}

} // namespace georeport::eval
