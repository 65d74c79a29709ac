#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streamlens/tree.hpp"

namespace streamlens {

struct SvmParams {
    double C = 1.0;
    double gamma = 0.0;  // 0 = 1 / (d * var(X)), the usual scale heuristic
};

inline constexpr double kSmoTolerance = 1e-3;
inline constexpr std::size_t kSmoMaxIterations = 1'000'000;

// Soft-margin RBF SVM. decision(x) = sum_i alpha_i K(x_i, x) + bias with
// label-signed alphas; the calibrated probability is
// 1 / (1 + exp(A * decision + B)).
struct SvmModel {
    Matrix support_vectors;
    std::vector<double> alphas;  // signed by label, |alpha| <= C
    double bias = 0.0;
    double gamma = 1.0;
    double C = 1.0;
    double platt_a = -1.0;
    double platt_b = 0.0;
    bool converged = true;  // false when the SMO iteration cap was reached
    std::uint64_t seed = 0;
    int dimension = 0;

    double decision(std::span<const double> x) const;
    double predict(std::span<const double> x) const;  // probability in (0, 1)
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// Solves the dual by sequential minimal optimization with maximal-violating-
// pair selection (tolerance 1e-3, capped at 1e6 pair updates; hitting the cap
// flags the model, it does not fail). Platt parameters come from a Newton fit
// of the sigmoid on out-of-fold decision values of an internal stratified
// 3-fold split. Throws SingleClassInput.
SvmModel train_svm(const Matrix& X, const std::vector<Label>& y, const SvmParams& params,
                   std::uint64_t seed);

// Sigmoid fit helper: minimizes the regularized negative log-likelihood of
// targets derived from the label counts over (A, B).
std::pair<double, double> fit_platt_sigmoid(const std::vector<double>& decisions,
                                            const std::vector<Label>& labels);

}  // namespace streamlens
