#pragma once

#include "streamlens/forest.hpp"
#include "streamlens/svm.hpp"

namespace streamlens {

inline constexpr double kForestWeight = 4.0;
inline constexpr double kSvmWeight = 1.0;

// Soft-voting ensemble weighted 4:1 in favor of the forest.
struct EnsembleModel {
    ForestModel forest;
    SvmModel svm;
    double forest_weight = kForestWeight;
    double svm_weight = kSvmWeight;

    double predict(std::span<const double> x) const {
        const double p_forest = forest.predict(x);
        const double p_svm = svm.predict(x);
        return (forest_weight * p_forest + svm_weight * p_svm) / (forest_weight + svm_weight);
    }
};

}  // namespace streamlens
