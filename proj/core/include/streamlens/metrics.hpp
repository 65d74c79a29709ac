#pragma once

#include <cstdint>
#include <vector>

#include "streamlens/features.hpp"

namespace streamlens {

struct ScoredSet {
    std::vector<double> scores;  // manipulation probabilities
    std::vector<Label> labels;
};

// One point per distinct score threshold, descending, ties grouped. Recall is
// nondecreasing along the list.
struct PrCurve {
    std::vector<double> recalls;
    std::vector<double> precisions;
    std::vector<double> thresholds;

    std::size_t size() const { return recalls.size(); }
};

struct EvaluationReport {
    double f1 = 0.0;
    double pr_auc = 0.0;
    double ap = 0.0;
    PrCurve curve;
    double baseline = 0.0;  // positive prevalence
    std::int64_t n_pos = 0;
    std::int64_t n_total = 0;
};

// Threshold sweep over distinct scores: at each step precision = TP/(TP+FP)
// and recall = TP/P. Throws NoPositives.
PrCurve pr_curve(const ScoredSet& set);

// Step integral sum (R_k - R_{k-1}) * P_k over curve points.
double average_precision(const ScoredSet& set);

// Trapezoidal area under the PR curve, extended to recall 0 at the first
// point's precision.
double pr_auc(const ScoredSet& set);

// F1 of the thresholded predictions (score > threshold); 0 when nothing is
// predicted positive.
double f1_score(const ScoredSet& set, double threshold = 0.5);

EvaluationReport evaluate(const ScoredSet& set, double threshold = 0.5);

// Simulates the prevalence baseline: a predictor that outputs a positive
// verdict with probability p = n_pos/n_total, averaged over `seeds` runs.
// All three scores concentrate near the prevalence.
EvaluationReport baseline_report(std::int64_t n_pos, std::int64_t n_total, int seeds,
                                 std::uint64_t seed = 42);

}  // namespace streamlens
