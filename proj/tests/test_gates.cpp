#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prae/gates.hpp"

#include <algorithm>
#include <cmath>

using namespace prae;

namespace {

struct McEstimate {
    double mean_z;
    double frac_open;
    double stderr_z;
};

// Monte-Carlo oracle straight from the gate definition.
McEstimate mc_gate(double mu, double sigma, long draws, std::uint64_t seed) {
    RngStream rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    long open = 0;
    for (long i = 0; i < draws; ++i) {
        double z = std::clamp(mu + sigma * rng.gaussian(), 0.0, 1.0);
        sum += z;
        sum_sq += z * z;
        if (z > 0.0) ++open;
    }
    McEstimate e;
    e.mean_z = sum / draws;
    double var = sum_sq / draws - e.mean_z * e.mean_z;
    e.stderr_z = std::sqrt(std::max(var, 0.0) / draws);
    e.frac_open = static_cast<double>(open) / draws;
    return e;
}

double fd(double (*f)(double, double), double mu, double sigma, double h = 1e-6) {
    return (f(mu + h, sigma) - f(mu - h, sigma)) / (2.0 * h);
}

// Finite-difference oracles evaluated on the non-saturating side of each
// curve. open_probability flattens against 1 for mu >> 0 (absolute eps there
// swamps the tiny slope), but its derivative is even in mu, so difference the
// lower tail instead; expected_gate obeys F'(mu) = F'(1-mu) the same way.
double fd_open_probability_grad(double mu, double sigma) {
    return fd(open_probability, mu <= 0.0 ? mu : -mu, sigma);
}

double fd_expected_gate_grad(double mu, double sigma) {
    return fd(expected_gate, mu <= 0.5 ? mu : 1.0 - mu, sigma);
}

} // namespace

TEST_CASE("sampling saturates at the clamp for extreme mu") {
    RngStream rng(1);
    GateBank bank = make_gate_bank(64, 0.5);
    std::fill(bank.mu.begin(), bank.mu.end(), 10.0);
    GateSample s = sample_gates(bank, rng);
    for (double z : s.z) CHECK(z == 1.0);
    for (auto p : s.pass_through) CHECK(p == 0);

    std::fill(bank.mu.begin(), bank.mu.end(), -10.0);
    s = sample_gates(bank, rng);
    for (double z : s.z) CHECK(z == 0.0);
}

TEST_CASE("sampling with vanishing noise passes mu through the clamp") {
    RngStream rng(2);
    GateBank bank = make_gate_bank(16, 1e-12);
    std::fill(bank.mu.begin(), bank.mu.end(), 0.5);
    GateSample s = sample_gates(bank, rng);
    for (double z : s.z) CHECK(z == doctest::Approx(0.5).epsilon(1e-9));
    for (auto p : s.pass_through) CHECK(p == 1);
}

TEST_CASE("make_gate_bank validates its inputs") {
    CHECK_THROWS(make_gate_bank(0, 0.5));
    CHECK_THROWS(make_gate_bank(4, 0.0));
    CHECK_THROWS(make_gate_bank(4, -1.0));
}

TEST_CASE("expected_gate at the symmetric point is exactly one half") {
    for (double sigma : {0.1, 0.5, 1.0, 3.0})
        CHECK(expected_gate(0.5, sigma) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("expected_gate saturates to 0 and 1 in the mu limits") {
    CHECK(expected_gate(100.0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(expected_gate(100.0, 0.5) - 1.0) < 1e-12);
    CHECK(std::abs(expected_gate(-100.0, 0.5)) < 1e-12);
}

TEST_CASE("expected_gate matches a 10^7-draw Monte-Carlo estimate") {
    McEstimate mc = mc_gate(0.2, 0.5, 10'000'000, 99);
    double closed = expected_gate(0.2, 0.5);
    CHECK(std::abs(closed - mc.mean_z) < 3.0 * mc.stderr_z);
}

TEST_CASE("open_probability basics") {
    CHECK(open_probability(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    // mu = sigma → Phi(1), via the erf identity as an independent oracle.
    double phi1 = 0.5 * (1.0 + std::erf(1.0 / std::sqrt(2.0)));
    for (double sigma : {0.2, 0.5, 1.0})
        CHECK(open_probability(sigma, sigma) == doctest::Approx(phi1).epsilon(1e-14));
    CHECK(open_probability(-100.0, 0.5) < 1e-12);
}

TEST_CASE("closed forms track Monte Carlo across a (mu, sigma) grid") {
    std::uint64_t seed = 7;
    for (double mu : {-0.5, 0.1, 0.8, 1.4})
        for (double sigma : {0.25, 0.75}) {
            McEstimate mc = mc_gate(mu, sigma, 400'000, seed++);
            CHECK(std::abs(expected_gate(mu, sigma) - mc.mean_z) < 3e-3);
            CHECK(std::abs(open_probability(mu, sigma) - mc.frac_open) < 3e-3);
        }
}

TEST_CASE("reg_l0 values") {
    GateBank bank = make_gate_bank(3, 0.5, 0.0);
    RegResult r = reg_l0(bank, 2.0);
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-14));

    RegResult zero = reg_l0(bank, 0.0);
    CHECK(zero.value == 0.0);
    for (double g : zero.grad_mu) CHECK(g == 0.0);
}

TEST_CASE("reg_l1 values") {
    GateBank bank = make_gate_bank(4, 0.5, 0.5);
    RegResult r = reg_l1(bank, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));

    bank.mu.assign(4, 100.0);
    r = reg_l1(bank, 1.0);
    for (double g : r.grad_mu) CHECK(std::abs(g) < 1e-12);
}

TEST_CASE("regularizer gradients match finite differences") {
    RngStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        double mu = rng.uniform(-1.0, 2.0);
        double sigma = rng.uniform(0.2, 1.5);
        double a0 = reg_l0_grad_mu(mu, sigma);
        double f0 = fd_open_probability_grad(mu, sigma);
        CHECK(std::abs(a0 - f0) / std::max({std::abs(a0), std::abs(f0), 1e-8}) < 1e-7);

        double a1 = reg_l1_grad_mu(mu, sigma);
        double f1 = fd_expected_gate_grad(mu, sigma);
        CHECK(std::abs(a1 - f1) / std::max({std::abs(a1), std::abs(f1), 1e-8}) < 1e-7);
    }
}

TEST_CASE("deterministic_gate clamps") {
    CHECK(deterministic_gate(0.7) == 0.7);
    CHECK(deterministic_gate(-3.0) == 0.0);
    CHECK(deterministic_gate(1.5) == 1.0);
}

TEST_CASE("expected_gate and open_probability are strictly increasing in mu") {
    // Strict away from the representable saturation at 0 and 1.
    auto interior = [](double v) { return v > 1e-12 && v < 1.0 - 1e-12; };
    for (double sigma : {0.2, 0.5, 1.0}) {
        double prev_e = -1.0, prev_p = -1.0;
        for (double mu = -2.0; mu <= 3.0; mu += 0.01) {
            double e = expected_gate(mu, sigma);
            double p = open_probability(mu, sigma);
            if (interior(e) || interior(prev_e))
                CHECK(e > prev_e);
            else
                CHECK(e >= prev_e - 1e-15);
            if (interior(p) || interior(prev_p))
                CHECK(p > prev_p);
            else
                CHECK(p >= prev_p - 1e-15);
            CHECK(e >= 0.0);
            CHECK(e <= 1.0);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            prev_e = e;
            prev_p = p;
        }
    }
}

TEST_CASE("clamp symmetry about mu = 1/2") {
    for (double sigma : {0.3, 0.5, 1.2})
        for (double t : {0.1, 0.4, 0.9, 2.0})
            CHECK(expected_gate(0.5 + t, sigma) + expected_gate(0.5 - t, sigma) ==
                  doctest::Approx(1.0).epsilon(1e-13));
}
