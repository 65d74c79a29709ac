#include <doctest.h>

#include <cmath>

#include "streamlens/ensemble.hpp"
#include "streamlens/svm.hpp"

using namespace streamlens;

namespace {

// the XOR corpus: four cluster centers duplicated with small jitter
void xor_data(Matrix& x, std::vector<Label>& y, std::size_t copies, std::uint64_t seed) {
    RngStream rng(seed);
    const std::vector<std::pair<std::vector<double>, Label>> centers = {
        {{0.0, 0.0}, Label::pristine},
        {{1.0, 1.0}, Label::pristine},
        {{0.0, 1.0}, Label::manipulated},
        {{1.0, 0.0}, Label::manipulated},
    };
    for (std::size_t c = 0; c < copies; ++c) {
        for (const auto& [center, label] : centers) {
            x.push_back({center[0] + 0.05 * rng.next_gaussian(), center[1] + 0.05 * rng.next_gaussian()});
            y.push_back(label);
        }
    }
}

double training_accuracy(const SvmModel& model, const Matrix& x, const std::vector<Label>& y) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool predicted = model.predict(x[i]) > 0.5;
        if (predicted == (y[i] == Label::manipulated)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("the rbf kernel is 1 at zero distance and decays") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const std::vector<double> b = {1.0, 2.0, 4.0};
    CHECK(rbf_kernel(a, a, 0.5) == 1.0);
    CHECK(rbf_kernel(a, a, 100.0) == 1.0);
    CHECK(rbf_kernel(a, b, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("jittered XOR is solved exactly at C=10, gamma=1") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 25, 0xABCD);

    // brute-force the 3x3 grid first: (10, 1) must be a zero-error cell
    double best_accuracy = 0.0;
    double chosen_accuracy = 0.0;
    for (const double c : {0.1, 1.0, 10.0}) {
        for (const double gamma : {0.1, 1.0, 10.0}) {
            const auto model = train_svm(x, y, {c, gamma}, 7);
            const double accuracy = training_accuracy(model, x, y);
            best_accuracy = std::max(best_accuracy, accuracy);
            if (c == 10.0 && gamma == 1.0) chosen_accuracy = accuracy;
        }
    }
    CHECK(best_accuracy == 1.0);
    CHECK(chosen_accuracy == 1.0);
}

TEST_CASE("dual feasibility holds after training") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 20, 0x1234);
    const double c = 10.0;
    const auto model = train_svm(x, y, {c, 1.0}, 3);

    double signed_sum = 0.0;
    for (const auto alpha : model.alphas) {
        CHECK(std::abs(alpha) <= c + 1e-9);
        CHECK(alpha != 0.0);  // only support vectors are retained
        signed_sum += alpha;
    }
    CHECK(std::abs(signed_sum) <= 1e-6);
}

TEST_CASE("KKT residuals of retained points are within tolerance") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 15, 0x77);
    const double c = 5.0;
    const auto model = train_svm(x, y, {c, 1.0}, 3);
    REQUIRE(model.converged);

    for (std::size_t k = 0; k < model.support_vectors.size(); ++k) {
        const double alpha = std::abs(model.alphas[k]);
        const double label = model.alphas[k] > 0.0 ? 1.0 : -1.0;
        const double margin = label * model.decision(model.support_vectors[k]);
        if (alpha < c - 1e-9) {
            CHECK(margin >= 1.0 - 1e-3);  // free or at zero: no margin violation beyond tol
        }
        if (alpha > 1e-9 && alpha < c - 1e-9) {
            CHECK(margin == doctest::Approx(1.0).epsilon(2e-3));  // free vectors sit on the margin
        }
    }
}

TEST_CASE("platt sigmoid at zero decision gives one half") {
    SvmModel model;
    model.dimension = 0;
    model.platt_a = -1.0;
    model.platt_b = 0.0;
    model.bias = 0.0;
    CHECK(model.predict(std::vector<double>{}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("calibrated probabilities stay in the open unit interval") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 10, 0x99);
    const auto model = train_svm(x, y, {10.0, 1.0}, 5);
    RngStream rng(123);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> probe = {rng.next_gaussian() * 3.0, rng.next_gaussian() * 3.0};
        const double p = model.predict(probe);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("a positive-region point scores above one half") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 25, 0xABCD);
    const auto model = train_svm(x, y, {10.0, 1.0}, 7);
    CHECK(model.predict(std::vector<double>{0.0, 1.0}) > 0.5);
    CHECK(model.predict(std::vector<double>{1.0, 0.0}) > 0.5);
    CHECK(model.predict(std::vector<double>{0.0, 0.0}) < 0.5);
}

TEST_CASE("prediction is deterministic") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 8, 0x31);
    const auto model = train_svm(x, y, {1.0, 1.0}, 2);
    const std::vector<double> probe = {0.3, 0.4};
    CHECK(model.predict(probe) == model.predict(probe));
}

TEST_CASE("training twice with one seed gives identical models") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 12, 0x55);
    const auto a = train_svm(x, y, {3.0, 0.7}, 17);
    const auto b = train_svm(x, y, {3.0, 0.7}, 17);
    CHECK(a.alphas == b.alphas);
    CHECK(a.bias == b.bias);
    CHECK(a.platt_a == b.platt_a);
    CHECK(a.platt_b == b.platt_b);
}

TEST_CASE("single-class input is rejected") {
    const Matrix x = {{0.0}, {1.0}};
    CHECK_THROWS_WITH_AS(train_svm(x, {Label::pristine, Label::pristine}, {1.0, 1.0}, 1),
                         doctest::Contains("SingleClassInput"), Error);
}

TEST_CASE("gamma defaults to the variance heuristic") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 10, 0x11);
    const auto model = train_svm(x, y, {1.0, 0.0}, 1);
    CHECK(model.gamma > 0.0);
    CHECK(std::isfinite(model.gamma));
}

TEST_CASE("ensemble votes 4:1 in favor of the forest") {
    struct {
        double forest;
        double svm;
        double expected;
    } cases[] = {{0.9, 0.4, 0.8}, {1.0, 0.0, 0.8}, {0.5, 0.5, 0.5}, {0.0, 1.0, 0.2}};
    for (const auto& c : cases) {
        CHECK((kForestWeight * c.forest + kSvmWeight * c.svm) / (kForestWeight + kSvmWeight) ==
              doctest::Approx(c.expected).epsilon(1e-15));
    }
}

TEST_CASE("ensemble output lies between its members") {
    Matrix x;
    std::vector<Label> y;
    xor_data(x, y, 15, 0x42);
    EnsembleModel ensemble;
    ForestParams fp;
    fp.n_trees = 20;
    ensemble.forest = train_forest(x, y, fp, 5);
    ensemble.svm = train_svm(x, y, {10.0, 1.0}, 5);
    RngStream rng(9);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> probe = {rng.next_double() * 2.0 - 0.5, rng.next_double() * 2.0 - 0.5};
        const double pf = ensemble.forest.predict(probe);
        const double ps = ensemble.svm.predict(probe);
        const double p = ensemble.predict(probe);
        CHECK(p >= std::min(pf, ps) - 1e-12);
        CHECK(p <= std::max(pf, ps) + 1e-12);
    }
}
