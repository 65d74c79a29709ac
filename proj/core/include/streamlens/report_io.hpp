#pragma once

#include <string>
#include <vector>

#include "streamlens/metrics.hpp"
#include "streamlens/search.hpp"

namespace streamlens {

struct NamedReport {
    std::string name;  // "forest", "svm", "ensemble"
    EvaluationReport report;
    bool has_curve = true;
};

// threshold,recall,precision rows
std::string curve_to_csv(const PrCurve& curve);

// detector,trial,params,split scores...,mean
std::string trials_to_csv(const std::vector<std::pair<std::string, TrialResult>>& rows, int n_splits);

// model,f1,pr_auc,ap plus the shared prevalence baseline
std::string summary_to_csv(const std::vector<NamedReport>& reports);

std::string summary_to_text(const std::vector<NamedReport>& reports);

// One PR curve per model plus the prevalence baseline line, with the scalar
// scores in the legend.
std::string pr_curves_svg(const std::vector<NamedReport>& reports, double baseline);

}  // namespace streamlens
