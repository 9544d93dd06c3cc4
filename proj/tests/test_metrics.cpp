#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prae/metrics.hpp"
#include "prae/linalg.hpp"
#include "prae/rng.hpp"

#include <cmath>

using namespace prae;

namespace {

// Brute-force pairwise AUC: P(score_pos > score_neg) + half credit for ties.
double pairwise_auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    double wins = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / pairs;
}

// Brute-force maximal F1 over every candidate threshold.
double brute_force_max_f1(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    double best = 0.0;
    for (double t : scores) {
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            bool pred = scores[i] >= t;
            if (pred && labels[i]) ++tp;
            if (pred && !labels[i]) ++fp;
            if (!pred && labels[i]) ++fn;
        }
        if (tp == 0) continue;
        double p = tp / (tp + fp), r = tp / (tp + fn);
        best = std::max(best, 2 * p * r / (p + r));
    }
    return best;
}

std::pair<std::vector<double>, std::vector<std::uint8_t>> random_instance(int n, std::uint64_t seed,
                                                                          bool with_ties) {
    RngStream rng(seed);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (int i = 0; i < n; ++i) {
        scores[i] = with_ties ? std::floor(rng.uniform() * 8.0) / 8.0 : rng.uniform();
        labels[i] = rng.uniform() < 0.3 ? 1 : 0;
    }
    labels[0] = 1;
    labels[1] = 0;
    return {scores, labels};
}

} // namespace

TEST_CASE("roc_auc basics") {
    CHECK(roc_auc({0.9, 0.1}, {1, 0}) == 1.0);
    CHECK(roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == 0.5);
    // The single anomaly ranks below both normals: 0 wins out of 2 pairs.
    CHECK(roc_auc({0.3, 0.7, 0.5}, {1, 0, 0}) == 0.0);
}

TEST_CASE("roc_auc equals the brute-force pairwise statistic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto [scores, labels] = random_instance(60, 100 + seed, seed % 2 == 0);
        CHECK(roc_auc(scores, labels) == doctest::Approx(pairwise_auc(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("roc_auc rejects single-class labels") {
    CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), ConfigError);
    CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {0, 0}), ConfigError);
}

TEST_CASE("roc_curve endpoints, monotonicity, and area") {
    auto [scores, labels] = random_instance(50, 7, true);
    RocCurve curve = roc_curve(scores, labels);
    CHECK(curve.points.front() == std::pair{0.0, 0.0});
    CHECK(curve.points.back() == std::pair{1.0, 1.0});
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].first >= curve.points[i - 1].first);
        CHECK(curve.points[i].second >= curve.points[i - 1].second);
    }
    CHECK(curve.auc == doctest::Approx(roc_auc(scores, labels)).epsilon(1e-12));
}

TEST_CASE("roc_curve: perfect and reversed separation") {
    RocCurve perfect = roc_curve({0.9, 0.8, 0.1, 0.2}, {1, 1, 0, 0});
    CHECK(perfect.auc == 1.0);
    RocCurve reversed = roc_curve({0.1, 0.2, 0.9, 0.8}, {1, 1, 0, 0});
    CHECK(reversed.auc == 0.0);
}

TEST_CASE("trapezoid area equals rank AUC on 100 random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto [scores, labels] = random_instance(40, 500 + seed, seed % 3 == 0);
        CHECK(std::abs(roc_curve(scores, labels).auc - roc_auc(scores, labels)) < 1e-12);
    }
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
    auto [scores, labels] = random_instance(80, 31, true);
    double base = roc_auc(scores, labels);
    std::vector<double> exp_scores(scores.size()), affine(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        exp_scores[i] = std::exp(scores[i]);
        affine[i] = 3.0 * scores[i] + 11.0;
    }
    CHECK(roc_auc(exp_scores, labels) == doctest::Approx(base).epsilon(1e-14));
    CHECK(roc_auc(affine, labels) == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("complement identity without ties") {
    RngStream rng(41);
    std::vector<double> scores(30);
    std::vector<std::uint8_t> labels(30);
    for (int i = 0; i < 30; ++i) {
        scores[i] = rng.uniform();
        labels[i] = i < 10 ? 1 : 0;
    }
    std::vector<double> neg(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) neg[i] = -scores[i];
    CHECK(roc_auc(scores, labels) + roc_auc(neg, labels) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("max_f1 hand-enumerated example") {
    // scores [5,4,3,2,1], labels [1,0,1,0,0] → best F1 = 0.8 at threshold 3.
    MaxF1Result r = max_f1({5, 4, 3, 2, 1}, {1, 0, 1, 0, 0});
    CHECK(r.f1 == doctest::Approx(0.8));
    CHECK(r.threshold == 3.0);
    CHECK(r.precision == doctest::Approx(2.0 / 3.0));
    CHECK(r.recall == doctest::Approx(1.0));
}

TEST_CASE("max_f1 basics") {
    MaxF1Result perfect = max_f1({0.9, 0.8, 0.1}, {1, 1, 0});
    CHECK(perfect.f1 == 1.0);

    // Predict-all is always reachable: 2 anomalies / 8 normals → F1 >= 1/3.
    std::vector<double> scores(10, 0.5);
    std::vector<std::uint8_t> labels(10, 0);
    labels[3] = labels[7] = 1;
    CHECK(max_f1(scores, labels).f1 >= doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(max_f1({0.1, 0.2}, {0, 0}), ConfigError);
}

TEST_CASE("max_f1 equals brute-force enumeration on instances up to 100") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto [scores, labels] = random_instance(100, 900 + seed, seed % 2 == 1);
        CHECK(max_f1(scores, labels).f1 ==
              doctest::Approx(brute_force_max_f1(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("subspace_angle: identical, orthogonal, and rotated spans") {
    Mat e1(2, 1), e2(2, 1);
    e1(0, 0) = 1.0;
    e2(1, 0) = 1.0;
    SubspaceAngleResult same = subspace_angle(e1, e1);
    CHECK(same.max_angle == doctest::Approx(0.0));
    CHECK(same.log10_angle == -16.0);

    SubspaceAngleResult ortho = subspace_angle(e1, e2);
    CHECK(ortho.max_angle == doctest::Approx(M_PI / 2));

    double alpha = 0.3;
    Mat rot(2, 1);
    rot(0, 0) = std::cos(alpha);
    rot(1, 0) = std::sin(alpha);
    CHECK(subspace_angle(e1, rot).max_angle == doctest::Approx(alpha).epsilon(1e-10));
}

TEST_CASE("subspace_angle symmetry and basis invariance") {
    RngStream rng(3);
    Mat b1(6, 2), b2(6, 2);
    for (double& v : b1.a) v = rng.gaussian();
    for (double& v : b2.a) v = rng.gaussian();
    SubspaceAngleResult ab = subspace_angle(b1, b2);
    SubspaceAngleResult ba = subspace_angle(b2, b1);
    CHECK(ab.max_angle == doctest::Approx(ba.max_angle).epsilon(1e-10));

    // Replace b1 by b1·Q for a rotation Q: the span is unchanged.
    double c = std::cos(0.7), s = std::sin(0.7);
    Mat rotated(6, 2);
    for (int i = 0; i < 6; ++i) {
        rotated(i, 0) = c * b1(i, 0) + s * b1(i, 1);
        rotated(i, 1) = -s * b1(i, 0) + c * b1(i, 1);
    }
    CHECK(subspace_angle(rotated, b2).max_angle == doctest::Approx(ab.max_angle).epsilon(1e-10));
}

TEST_CASE("subspace_angle rejects rank-deficient bases") {
    Mat b(4, 2);
    for (int i = 0; i < 4; ++i) {
        b(i, 0) = i;
        b(i, 1) = 2.0 * i;
    }
    Mat ok(4, 1);
    ok(0, 0) = 1.0;
    CHECK_THROWS_AS(subspace_angle(b, ok), ConfigError);
}

TEST_CASE("mse") {
    Mat x(2, 2), xhat(2, 2);
    x(0, 0) = 1.0;
    xhat = x;
    CHECK(mse(x, xhat) == 0.0);

    // Rows differing by (3,4) → 25.
    xhat(0, 0) = 4.0;
    xhat(0, 1) = 4.0;
    xhat(1, 0) = 3.0;
    xhat(1, 1) = 4.0;
    CHECK(mse(x, xhat) == doctest::Approx(25.0));

    // Offsets (1,0) and (0,2) → (1+4)/2.
    Mat a(2, 2), b(2, 2);
    b(0, 0) = 1.0;
    b(1, 1) = 2.0;
    CHECK(mse(a, b) == doctest::Approx(2.5));

    Mat bad(3, 2);
    CHECK_THROWS_AS(mse(x, bad), ShapeError);
}
