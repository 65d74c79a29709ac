#pragma once

#include <vector>

#include "streamlens/metrics.hpp"

namespace streamlens::testsupport {

// Independent O(n^2) reference for the PR metrics: an explicit confusion
// matrix at every distinct threshold, no sorting shared with the library
// implementation.
struct BruteCurvePoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

std::vector<BruteCurvePoint> brute_pr_curve(const ScoredSet& set);
double brute_average_precision(const ScoredSet& set);
double brute_pr_auc(const ScoredSet& set);
double brute_f1(const ScoredSet& set, double threshold = 0.5);

// Random scored set with ties made likely: roughly half the scores land on a
// coarse grid. Guarantees at least one positive label.
ScoredSet random_scored_set(std::uint64_t seed, std::size_t max_size = 20);

}  // namespace streamlens::testsupport
