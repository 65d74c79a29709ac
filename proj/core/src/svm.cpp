#include "streamlens/svm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "streamlens/error.hpp"
#include "streamlens/rng.hpp"

namespace streamlens {

namespace {

constexpr double kAlphaSnap = 1e-12;

double resolve_gamma(const Matrix& x, double gamma) {
    if (gamma > 0.0) return gamma;
    // 1 / (d * var) over all matrix entries, with a floor for constant data
    double mean = 0.0;
    std::size_t count = 0;
    for (const auto& row : x) {
        for (const auto v : row) {
            mean += v;
            ++count;
        }
    }
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (const auto& row : x) {
        for (const auto v : row) var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(count);
    const double d = static_cast<double>(x[0].size());
    return var > 1e-12 ? 1.0 / (d * var) : 1.0 / d;
}

// Dual solver state over rows selected by `rows`; the kernel matrix is dense,
// which is fine at the few-hundred-row scale this pipeline runs at.
class SmoSolver {
public:
    SmoSolver(const Matrix& x, const std::vector<int>& y, const std::vector<std::size_t>& rows,
              double c, double gamma)
        : c_(c), n_(rows.size()) {
        y_.reserve(n_);
        for (const auto r : rows) y_.push_back(y[r]);
        kernel_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i; j < n_; ++j) {
                const double k = rbf_kernel(x[rows[i]], x[rows[j]], gamma);
                kernel_[i * n_ + j] = k;
                kernel_[j * n_ + i] = k;
            }
        }
        alpha_.assign(n_, 0.0);
        // F_i = f(x_i) - y_i without the bias; all alphas start at zero
        f_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) f_[i] = -static_cast<double>(y_[i]);
    }

    bool solve() {
        std::size_t iterations = 0;
#ifndef NDEBUG
        double last_objective = dual_objective();
#endif
        while (iterations < kSmoMaxIterations) {
            const auto [i, j, violation] = select_pair();
            if (violation <= kSmoTolerance) {
                finish_bias();
                return true;
            }
            update_pair(i, j);
            ++iterations;
#ifndef NDEBUG
            if (iterations % 256 == 0) {
                const double objective = dual_objective();
                assert(objective <= last_objective + 1e-9 * (1.0 + std::abs(last_objective)));
                last_objective = objective;
            }
#endif
        }
        finish_bias();
        return false;
    }

    const std::vector<double>& alphas() const { return alpha_; }
    double bias() const { return bias_; }
    double max_kkt_violation() const { return std::get<2>(select_pair()); }

private:
    bool in_up_set(std::size_t k) const {
        return (y_[k] > 0 && alpha_[k] < c_) || (y_[k] < 0 && alpha_[k] > 0.0);
    }
    bool in_low_set(std::size_t k) const {
        return (y_[k] > 0 && alpha_[k] > 0.0) || (y_[k] < 0 && alpha_[k] < c_);
    }

    // Maximal violating pair: i = argmin F over the up set, j = argmax F over
    // the low set; optimality when f_low - f_up <= tolerance.
    std::tuple<std::size_t, std::size_t, double> select_pair() const {
        double f_up = std::numeric_limits<double>::infinity();
        double f_low = -std::numeric_limits<double>::infinity();
        std::size_t i = 0;
        std::size_t j = 0;
        for (std::size_t k = 0; k < n_; ++k) {
            if (in_up_set(k) && f_[k] < f_up) {
                f_up = f_[k];
                i = k;
            }
            if (in_low_set(k) && f_[k] > f_low) {
                f_low = f_[k];
                j = k;
            }
        }
        return {i, j, f_low - f_up};
    }

    void update_pair(std::size_t i, std::size_t j) {
        const double s = static_cast<double>(y_[i] * y_[j]);
        double low;
        double high;
        if (y_[i] != y_[j]) {
            low = std::max(0.0, alpha_[j] - alpha_[i]);
            high = std::min(c_, c_ + alpha_[j] - alpha_[i]);
        } else {
            low = std::max(0.0, alpha_[i] + alpha_[j] - c_);
            high = std::min(c_, alpha_[i] + alpha_[j]);
        }
        double eta = kernel_[i * n_ + i] + kernel_[j * n_ + j] - 2.0 * kernel_[i * n_ + j];
        if (eta < 1e-12) eta = 1e-12;  // coincident points

        double alpha_j = alpha_[j] + static_cast<double>(y_[j]) * (f_[i] - f_[j]) / eta;
        alpha_j = std::clamp(alpha_j, low, high);
        if (alpha_j < kAlphaSnap) alpha_j = 0.0;
        if (alpha_j > c_ - kAlphaSnap) alpha_j = c_;
        double alpha_i = alpha_[i] + s * (alpha_[j] - alpha_j);
        alpha_i = std::clamp(alpha_i, 0.0, c_);
        if (alpha_i < kAlphaSnap) alpha_i = 0.0;
        if (alpha_i > c_ - kAlphaSnap) alpha_i = c_;

        const double delta_i = (alpha_i - alpha_[i]) * static_cast<double>(y_[i]);
        const double delta_j = (alpha_j - alpha_[j]) * static_cast<double>(y_[j]);
        for (std::size_t k = 0; k < n_; ++k) {
            f_[k] += delta_i * kernel_[i * n_ + k] + delta_j * kernel_[j * n_ + k];
        }
        alpha_[i] = alpha_i;
        alpha_[j] = alpha_j;
    }

    // Free support vectors pin the bias exactly; otherwise take the midpoint
    // of the residual interval.
    void finish_bias() {
        double free_sum = 0.0;
        std::size_t free_count = 0;
        for (std::size_t k = 0; k < n_; ++k) {
            if (alpha_[k] > 0.0 && alpha_[k] < c_) {
                free_sum += f_[k];
                ++free_count;
            }
        }
        if (free_count > 0) {
            bias_ = -free_sum / static_cast<double>(free_count);
            return;
        }
        double f_up = std::numeric_limits<double>::infinity();
        double f_low = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_; ++k) {
            if (in_up_set(k)) f_up = std::min(f_up, f_[k]);
            if (in_low_set(k)) f_low = std::max(f_low, f_[k]);
        }
        bias_ = -(f_up + f_low) / 2.0;
    }

#ifndef NDEBUG
    // 1/2 a^T Q a - e^T a, recomputed from F to avoid a second pass over K:
    // F_i = (Q a)_i y_i - y_i  =>  (Q a)_i = (F_i + y_i) y_i
    double dual_objective() const {
        double obj = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            obj += 0.5 * alpha_[k] * (f_[k] + static_cast<double>(y_[k])) * static_cast<double>(y_[k]) -
                   alpha_[k];
        }
        return obj;
    }
#endif

    double c_;
    std::size_t n_;
    std::vector<int> y_;
    std::vector<double> kernel_;
    std::vector<double> alpha_;
    std::vector<double> f_;
    double bias_ = 0.0;
};

struct DualSolution {
    std::vector<double> signed_alphas;  // per training row of `rows`
    double bias = 0.0;
    bool converged = true;
};

DualSolution solve_dual(const Matrix& x, const std::vector<int>& y, const std::vector<std::size_t>& rows,
                        double c, double gamma) {
    SmoSolver solver(x, y, rows, c, gamma);
    DualSolution solution;
    solution.converged = solver.solve();
    solution.bias = solver.bias();
    solution.signed_alphas.resize(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        solution.signed_alphas[k] = solver.alphas()[k] * static_cast<double>(y[rows[k]] > 0 ? 1 : -1);
    }
    return solution;
}

double decision_from(const Matrix& x, const std::vector<std::size_t>& rows,
                     const std::vector<double>& signed_alphas, double bias, double gamma,
                     std::span<const double> point) {
    double sum = bias;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (signed_alphas[k] != 0.0) {
            sum += signed_alphas[k] * rbf_kernel(x[rows[k]], point, gamma);
        }
    }
    return sum;
}

// Round-robin stratified folds; every fold keeps both classes when counts
// allow it.
std::vector<int> stratified_fold_assignment(const std::vector<Label>& y, int n_folds, RngStream& rng) {
    std::vector<int> fold_of(y.size(), 0);
    for (const auto label : {Label::pristine, Label::manipulated}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == label) members.push_back(i);
        }
        rng.shuffle(members);
        for (std::size_t k = 0; k < members.size(); ++k) {
            fold_of[members[k]] = static_cast<int>(k % static_cast<std::size_t>(n_folds));
        }
    }
    return fold_of;
}

}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double squared = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        squared += diff * diff;
    }
    return std::exp(-gamma * squared);
}

double SvmModel::decision(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension) {
        throw Error(Errc::dimension_mismatch, "vector length " + std::to_string(x.size()) +
                                                  ", model expects " + std::to_string(dimension));
    }
    double sum = bias;
    for (std::size_t k = 0; k < support_vectors.size(); ++k) {
        sum += alphas[k] * rbf_kernel(support_vectors[k], x, gamma);
    }
    return sum;
}

double SvmModel::predict(std::span<const double> x) const {
    const double f = platt_a * decision(x) + platt_b;
    double p;
    if (f >= 0.0) {
        const double e = std::exp(-f);
        p = e / (1.0 + e);
    } else {
        p = 1.0 / (1.0 + std::exp(f));
    }
    return std::clamp(p, 1e-15, 1.0 - 1e-15);
}

std::pair<double, double> fit_platt_sigmoid(const std::vector<double>& decisions,
                                            const std::vector<Label>& labels) {
    // Newton iterations on the regularized NLL, following the numerically
    // careful formulation of Lin, Weng & Keerthi (2007).
    const std::size_t n = decisions.size();
    double prior1 = 0.0;
    for (const auto label : labels) {
        if (label == Label::manipulated) prior1 += 1.0;
    }
    const double prior0 = static_cast<double>(n) - prior1;
    const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo_target = 1.0 / (prior0 + 2.0);

    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) {
        target[i] = labels[i] == Label::manipulated ? hi_target : lo_target;
    }

    constexpr int max_iterations = 100;
    constexpr double min_step = 1e-10;
    constexpr double sigma = 1e-12;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    auto objective = [&](double pa, double pb) {
        double value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = pa * decisions[i] + pb;
            if (f >= 0.0) {
                value += target[i] * f + std::log1p(std::exp(-f));
            } else {
                value += (target[i] - 1.0) * f + std::log1p(std::exp(f));
            }
        }
        return value;
    };

    double current = objective(a, b);
    for (int iter = 0; iter < max_iterations; ++iter) {
        double h11 = sigma;
        double h22 = sigma;
        double h21 = 0.0;
        double g1 = 0.0;
        double g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = a * decisions[i] + b;
            double p;
            double q;
            if (f >= 0.0) {
                const double e = std::exp(-f);
                p = e / (1.0 + e);
                q = 1.0 / (1.0 + e);
            } else {
                const double e = std::exp(f);
                p = 1.0 / (1.0 + e);
                q = e / (1.0 + e);
            }
            const double d1 = target[i] - p;
            const double d2 = p * q;
            g1 += decisions[i] * d1;
            g2 += d1;
            h11 += decisions[i] * decisions[i] * d2;
            h22 += d2;
            h21 += decisions[i] * d2;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double slope = g1 * da + g2 * db;

        double step = 1.0;
        while (step >= min_step) {
            const double next = objective(a + step * da, b + step * db);
            if (next < current + 1e-4 * step * slope) {
                a += step * da;
                b += step * db;
                current = next;
                break;
            }
            step /= 2.0;
        }
        if (step < min_step) break;
    }
    return {a, b};
}

SvmModel train_svm(const Matrix& X, const std::vector<Label>& y, const SvmParams& params,
                   std::uint64_t seed) {
    if (X.empty() || X.size() != y.size()) {
        throw Error(Errc::dimension_mismatch, "feature matrix and labels must align and be non-empty");
    }
    const std::size_t dimension = X[0].size();
    for (const auto& row : X) {
        if (row.size() != dimension) {
            throw Error(Errc::dimension_mismatch, "ragged feature matrix");
        }
    }
    const auto positives = static_cast<std::size_t>(std::count(y.begin(), y.end(), Label::manipulated));
    if (positives == 0 || positives == y.size()) {
        throw Error(Errc::single_class_input, "SVM training needs both classes");
    }

    SvmModel model;
    model.C = params.C;
    model.gamma = resolve_gamma(X, params.gamma);
    model.seed = seed;
    model.dimension = static_cast<int>(dimension);

    std::vector<int> sign(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sign[i] = y[i] == Label::manipulated ? 1 : -1;

    std::vector<std::size_t> all_rows(X.size());
    std::iota(all_rows.begin(), all_rows.end(), 0);

    // out-of-fold decision values for the sigmoid; fall back to in-sample
    // decisions when a fold would lose a class entirely
    constexpr int n_folds = 3;
    auto fold_rng = RngStream::derived(seed, rng_tag::platt_fold);
    const auto fold_of = stratified_fold_assignment(y, n_folds, fold_rng);
    std::vector<double> oof_decisions(X.size(), 0.0);
    bool folds_ok = true;
    for (int fold = 0; fold < n_folds && folds_ok; ++fold) {
        std::vector<std::size_t> train_rows;
        std::vector<std::size_t> held_rows;
        for (std::size_t i = 0; i < X.size(); ++i) {
            (fold_of[i] == fold ? held_rows : train_rows).push_back(i);
        }
        std::size_t train_pos = 0;
        for (const auto r : train_rows) {
            if (y[r] == Label::manipulated) ++train_pos;
        }
        if (held_rows.empty() || train_rows.empty() || train_pos == 0 || train_pos == train_rows.size()) {
            folds_ok = false;
            break;
        }
        const auto fold_solution = solve_dual(X, sign, train_rows, model.C, model.gamma);
        for (const auto r : held_rows) {
            oof_decisions[r] =
                decision_from(X, train_rows, fold_solution.signed_alphas, fold_solution.bias, model.gamma, X[r]);
        }
    }

    const auto solution = solve_dual(X, sign, all_rows, model.C, model.gamma);
    model.converged = solution.converged;

    if (!folds_ok) {
        for (std::size_t i = 0; i < X.size(); ++i) {
            oof_decisions[i] =
                decision_from(X, all_rows, solution.signed_alphas, solution.bias, model.gamma, X[i]);
        }
    }
    std::tie(model.platt_a, model.platt_b) = fit_platt_sigmoid(oof_decisions, y);

    model.bias = solution.bias;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (solution.signed_alphas[i] != 0.0) {
            model.support_vectors.push_back(X[i]);
            model.alphas.push_back(solution.signed_alphas[i]);
        }
    }
    return model;
}

}  // namespace streamlens
