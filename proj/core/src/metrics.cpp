#include "streamlens/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "streamlens/error.hpp"
#include "streamlens/rng.hpp"

namespace streamlens {

namespace {

std::int64_t count_positives(const std::vector<Label>& labels) {
    return std::count(labels.begin(), labels.end(), Label::manipulated);
}

void check_scored_set(const ScoredSet& set) {
    if (set.scores.size() != set.labels.size()) {
        throw Error(Errc::dimension_mismatch, "scores and labels differ in length");
    }
    if (count_positives(set.labels) == 0) {
        throw Error(Errc::no_positives, "no positive labels in the evaluation set");
    }
}

}  // namespace

PrCurve pr_curve(const ScoredSet& set) {
    check_scored_set(set);
    const std::size_t n = set.scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return set.scores[a] > set.scores[b]; });

    const double total_pos = static_cast<double>(count_positives(set.labels));
    PrCurve curve;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < n) {
        const double threshold = set.scores[order[i]];
        // consume the whole tie group at this score
        while (i < n && set.scores[order[i]] == threshold) {
            if (set.labels[order[i]] == Label::manipulated) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        curve.thresholds.push_back(threshold);
        curve.precisions.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
        curve.recalls.push_back(static_cast<double>(tp) / total_pos);
    }
    return curve;
}

double average_precision(const ScoredSet& set) {
    const auto curve = pr_curve(set);
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        ap += (curve.recalls[k] - prev_recall) * curve.precisions[k];
        prev_recall = curve.recalls[k];
    }
    return ap;
}

double pr_auc(const ScoredSet& set) {
    const auto curve = pr_curve(set);
    double area = 0.0;
    double prev_recall = 0.0;
    double prev_precision = curve.precisions.front();  // extend flat to recall 0
    for (std::size_t k = 0; k < curve.size(); ++k) {
        area += (curve.recalls[k] - prev_recall) * (curve.precisions[k] + prev_precision) / 2.0;
        prev_recall = curve.recalls[k];
        prev_precision = curve.precisions[k];
    }
    return area;
}

double f1_score(const ScoredSet& set, double threshold) {
    if (set.scores.size() != set.labels.size()) {
        throw Error(Errc::dimension_mismatch, "scores and labels differ in length");
    }
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (std::size_t i = 0; i < set.scores.size(); ++i) {
        const bool predicted = set.scores[i] > threshold;
        const bool actual = set.labels[i] == Label::manipulated;
        if (predicted && actual) ++tp;
        if (predicted && !actual) ++fp;
        if (!predicted && actual) ++fn;
    }
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
}

EvaluationReport evaluate(const ScoredSet& set, double threshold) {
    EvaluationReport report;
    report.n_total = static_cast<std::int64_t>(set.labels.size());
    report.n_pos = count_positives(set.labels);
    report.baseline = report.n_total > 0
                          ? static_cast<double>(report.n_pos) / static_cast<double>(report.n_total)
                          : 0.0;
    report.f1 = f1_score(set, threshold);
    report.curve = pr_curve(set);
    report.ap = average_precision(set);
    report.pr_auc = pr_auc(set);
    return report;
}

EvaluationReport baseline_report(std::int64_t n_pos, std::int64_t n_total, int seeds, std::uint64_t seed) {
    if (n_pos <= 0 || n_pos >= n_total) {
        throw Error(Errc::degenerate_stratum, "baseline needs 0 < n_pos < n_total");
    }
    const double p = static_cast<double>(n_pos) / static_cast<double>(n_total);

    ScoredSet set;
    set.labels.assign(static_cast<std::size_t>(n_total), Label::pristine);
    std::fill_n(set.labels.begin(), static_cast<std::size_t>(n_pos), Label::manipulated);
    set.scores.resize(static_cast<std::size_t>(n_total));

    double f1_sum = 0.0;
    double ap_sum = 0.0;
    double auc_sum = 0.0;
    for (int run = 0; run < seeds; ++run) {
        auto rng = RngStream::derived(seed, rng_tag::simulation, static_cast<std::uint64_t>(run));
        for (auto& score : set.scores) score = rng.next_bernoulli(p) ? 1.0 : 0.0;
        f1_sum += f1_score(set);
        ap_sum += average_precision(set);
        auc_sum += pr_auc(set);
    }

    EvaluationReport report;
    report.n_pos = n_pos;
    report.n_total = n_total;
    report.baseline = p;
    report.f1 = f1_sum / seeds;
    report.ap = ap_sum / seeds;
    report.pr_auc = auc_sum / seeds;
    // representative curve from the first simulated run
    auto rng = RngStream::derived(seed, rng_tag::simulation, 0);
    for (auto& score : set.scores) score = rng.next_bernoulli(p) ? 1.0 : 0.0;
    report.curve = pr_curve(set);
    return report;
}

}  // namespace streamlens
