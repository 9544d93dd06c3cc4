#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prae/oracle.hpp"
#include "prae/presets.hpp"
#include "prae/rng.hpp"

#ifdef PRAE_HAVE_EIGEN
#include <Eigen/Dense>
#include <Eigen/SVD>
#endif

#include <bit>
#include <cmath>

using namespace prae;

namespace {

// 6 rows exactly on a line through the origin in R^3 plus 2 far-off rows.
Mat line_instance() {
    Mat x(8, 3);
    const double u[3] = {2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0};
    const double coeff[6] = {-1.2, -0.9, -0.5, 0.6, 0.8, 1.1};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = coeff[i] * u[j];
    x(6, 0) = -2.0; x(6, 1) = 4.0; x(6, 2) = 1.0;
    x(7, 0) = 3.0; x(7, 1) = -1.0; x(7, 2) = -3.5;
    return x;
}

} // namespace

TEST_CASE("lambda = 0 selects nothing") {
    Mat x = line_instance();
    RaeOracleResult r = brute_force_rae_linear(x, 0.0, 1);
    CHECK(r.best_loss == 0.0);
    for (auto b : r.best_b) CHECK(b == 0);
}

TEST_CASE("huge lambda selects everything") {
    Mat x = line_instance();
    RaeOracleResult r = brute_force_rae_linear(x, 1e6, 1);
    for (auto b : r.best_b) CHECK(b == 1);
}

TEST_CASE("mid-range lambda selects exactly the collinear rows") {
    Mat x = line_instance();
    // Inlier residuals are ~eps; the far rows cost ~10 each; 1.0 sits between.
    RaeOracleResult r = brute_force_rae_linear(x, 1.0, 1, false, true);
    std::vector<std::uint8_t> expected = {1, 1, 1, 1, 1, 1, 0, 0};
    REQUIRE(r.best_b == expected);

    // The kept table confirms the enumeration: nothing beats best_loss.
    REQUIRE(r.all_subset_losses.size() == 256);
    for (auto [mask, loss] : r.all_subset_losses) CHECK(loss >= r.best_loss);
    CHECK(rae_loss(x, r.best_b, 1.0, 1) == r.best_loss);
}

#ifdef PRAE_HAVE_EIGEN
TEST_CASE("subset residuals agree with an independent SVD routine") {
    Mat x = line_instance();
    RngStream rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t mask = static_cast<std::uint32_t>(rng.below(256));
        if (std::popcount(mask) == 0) continue;
        std::vector<std::uint8_t> b(8);
        int count = 0;
        for (int i = 0; i < 8; ++i) {
            b[i] = (mask >> i) & 1u;
            count += b[i];
        }
        Eigen::MatrixXd sub(count, 3);
        int at = 0;
        for (int i = 0; i < 8; ++i)
            if (b[i]) {
                for (int j = 0; j < 3; ++j) sub(at, j) = x(i, j);
                ++at;
            }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
        double residual = 0.0;
        for (int j = 1; j < svd.singularValues().size(); ++j)
            residual += svd.singularValues()[j] * svd.singularValues()[j];
        double expected = residual - 1.0 * count;
        CHECK(rae_loss(x, b, 1.0, 1) == doctest::Approx(expected).epsilon(1e-9));
    }
}
#endif

TEST_CASE("oracle optimality: random selections never beat best_b") {
    presets::OracleInstance inst = presets::oracle_instance(5);
    RaeOracleResult best = brute_force_rae_linear(inst.x, inst.lambda, inst.k);
    RngStream rng(23);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<std::uint8_t> b(8);
        for (auto& v : b) v = rng.uniform() < 0.5 ? 1 : 0;
        CHECK(rae_loss(inst.x, b, inst.lambda, inst.k) >= best.best_loss - 1e-12);
    }
}

TEST_CASE("selected count is non-decreasing in lambda") {
    Mat x = line_instance();
    int prev = 0;
    for (double lambda : {0.0, 1e-4, 0.01, 0.3, 1.0, 3.0, 8.0, 15.0, 1e3}) {
        RaeOracleResult r = brute_force_rae_linear(x, lambda, 1);
        int count = 0;
        for (auto b : r.best_b) count += b;
        CHECK(count >= prev);
        prev = count;
    }
}

TEST_CASE("centered residuals change the oracle's frame") {
    // A line offset far from the origin: origin-centered rank-1 cannot absorb
    // the offset direction, the centered fit can.
    Mat x(6, 3);
    for (int i = 0; i < 6; ++i) {
        x(i, 0) = 10.0 + 0.1 * i;
        x(i, 1) = 10.0 - 0.1 * i;
        x(i, 2) = 10.0;
    }
    RaeOracleResult centered = brute_force_rae_linear(x, 0.5, 1, true);
    int kept = 0;
    for (auto b : centered.best_b) kept += b;
    CHECK(kept == 6);
    double origin_loss = rae_loss(x, centered.best_b, 0.5, 1, false);
    double centered_loss = rae_loss(x, centered.best_b, 0.5, 1, true);
    CHECK(centered_loss < origin_loss);
}

TEST_CASE("enumeration guard") {
    Mat big(21, 3);
    CHECK_THROWS_WITH_AS(brute_force_rae_linear(big, 1.0, 1), doctest::Contains("20"), ConfigError);
    Mat x = line_instance();
    CHECK_THROWS_AS(brute_force_rae_linear(x, 1.0, 3), ConfigError);
}

TEST_CASE("equivalence_check matches the oracle on a well-separated instance") {
    presets::OracleInstance inst = presets::oracle_instance(1);
    EquivalenceReport rep = equivalence_check(inst.x, inst.lambda, inst.k, presets::oracle_config(1));
    CHECK(rep.match);
    CHECK(rep.prae_selected == inst.inlier_mask);
    CHECK(rep.ld_prae >= rep.ld_oracle - 1e-9);
}

TEST_CASE("equivalence_check at the degenerate lambda extremes") {
    presets::OracleInstance inst = presets::oracle_instance(2);
    EquivalenceReport zero = equivalence_check(inst.x, 0.0, inst.k, presets::oracle_config(2));
    CHECK(zero.match);
    for (auto b : zero.prae_selected) CHECK(b == 0);

    EquivalenceReport huge = equivalence_check(inst.x, 1e4, inst.k, presets::oracle_config(2));
    CHECK(huge.match);
    for (auto b : huge.prae_selected) CHECK(b == 1);
}
