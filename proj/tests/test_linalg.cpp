#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prae/linalg.hpp"
#include "prae/rng.hpp"

#ifdef PRAE_HAVE_EIGEN
#include <Eigen/Dense>
#include <Eigen/SVD>
#endif

#include <cmath>

using namespace prae;

namespace {

Mat random_mat(int r, int c, std::uint64_t seed) {
    RngStream rng(seed);
    Mat m(r, c);
    for (double& v : m.a) v = rng.gaussian();
    return m;
}

} // namespace

TEST_CASE("singular values of a diagonal matrix") {
    Mat a(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = -5.0;
    a(2, 2) = 1.0;
    std::vector<double> sv = linalg::singular_values(a);
    CHECK(sv[0] == doctest::Approx(5.0));
    CHECK(sv[1] == doctest::Approx(3.0));
    CHECK(sv[2] == doctest::Approx(1.0));
}

TEST_CASE("jacobi svd reconstructs the spectrum of random matrices") {
    Mat a = random_mat(12, 7, 42);
    std::vector<double> sv = linalg::singular_values(a);
    // Frobenius identity: sum of squared singular values equals ||A||_F^2.
    double frob = 0.0;
    for (double v : a.a) frob += v * v;
    double sum_sq = 0.0;
    for (double s : sv) sum_sq += s * s;
    CHECK(sum_sq == doctest::Approx(frob).epsilon(1e-12));
    for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i - 1] >= sv[i]);
}

#ifdef PRAE_HAVE_EIGEN
TEST_CASE("jacobi svd matches Eigen on random matrices") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        Mat a = random_mat(9, 6, seed);
        Eigen::MatrixXd e(9, 6);
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 6; ++j) e(i, j) = a(i, j);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
        std::vector<double> sv = linalg::singular_values(a);
        for (int j = 0; j < 6; ++j) CHECK(sv[j] == doctest::Approx(svd.singularValues()[j]).epsilon(1e-10));
    }
}
#endif

TEST_CASE("orthonormalize_columns yields an orthonormal basis") {
    Mat b = random_mat(20, 5, 9);
    Mat q = linalg::orthonormalize_columns(b);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double dot = 0.0;
            for (int r = 0; r < 20; ++r) dot += q(r, i) * q(r, j);
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("orthonormalize_columns rejects rank-deficient input") {
    Mat b(4, 2);
    for (int i = 0; i < 4; ++i) {
        b(i, 0) = i + 1.0;
        b(i, 1) = 2.0 * (i + 1.0); // same direction
    }
    CHECK_THROWS_AS(linalg::orthonormalize_columns(b), ConfigError);
}

TEST_CASE("principal_subspace recovers a planted subspace") {
    RngStream rng(77);
    Mat basis = linalg::orthonormalize_columns(random_mat(10, 2, 78));
    Mat x(200, 10);
    for (int i = 0; i < 200; ++i) {
        double c0 = rng.gaussian(), c1 = rng.gaussian();
        for (int j = 0; j < 10; ++j) x(i, j) = c0 * basis(j, 0) + c1 * basis(j, 1);
    }
    Mat est = linalg::principal_subspace(x, 2);
    // Every estimated column must lie in span(basis).
    for (int col = 0; col < 2; ++col) {
        double norm_in_span = 0.0;
        for (int k = 0; k < 2; ++k) {
            double dot = 0.0;
            for (int j = 0; j < 10; ++j) dot += est(j, col) * basis(j, k);
            norm_in_span += dot * dot;
        }
        CHECK(norm_in_span == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("pca_residual basics") {
    // Two exactly-collinear rows: rank 1, no residual at k=1.
    Mat x(2, 3);
    x(0, 0) = 1; x(0, 1) = 2; x(0, 2) = 2;
    x(1, 0) = 2; x(1, 1) = 4; x(1, 2) = 4;
    CHECK(linalg::pca_residual(x, 1, false) < 1e-18);

    // A single row fits any k >= 1 subspace exactly (no trailing values).
    Mat one(1, 3);
    one(0, 0) = 3; one(0, 1) = 4; one(0, 2) = 0;
    CHECK(linalg::pca_residual(one, 1, false) == 0.0);

    // Orthogonal rows at k=1: the smaller row is the residual.
    Mat y(2, 2);
    y(0, 0) = 5.0;
    y(1, 1) = 2.0;
    CHECK(linalg::pca_residual(y, 1, false) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("pca_residual with centering removes the mean") {
    // Rows on a line offset from the origin: affine fit is exact, linear is not.
    Mat x(3, 2);
    x(0, 0) = 1.0; x(0, 1) = 1.0;
    x(1, 0) = 2.0; x(1, 1) = 1.0;
    x(2, 0) = 3.0; x(2, 1) = 1.0;
    CHECK(linalg::pca_residual(x, 1, true) < 1e-18);
    CHECK(linalg::pca_residual(x, 1, false) > 0.1);
}
