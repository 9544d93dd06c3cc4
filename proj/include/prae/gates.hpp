#pragma once

#include "prae/rng.hpp"

#include <cstdint>
#include <vector>

namespace prae {

// Trainable mu values are clipped to this box after every update. Outside it
// both the gate and the regularizer gradients are numerically saturated, so
// the box never changes the sign-based inlier/outlier decision.
inline constexpr double kMuMin = -1.0;
inline constexpr double kMuMax = 2.0;

// Per-sample stochastic gate parameters: z[i] = clamp(mu[i] + eps, 0, 1)
// with eps ~ N(0, sigma^2); sigma stays fixed during training.
struct GateBank {
    std::vector<double> mu;
    double sigma = 0.5;

    int size() const { return static_cast<int>(mu.size()); }
};

GateBank make_gate_bank(int n, double sigma = 0.5, double mu_init = 0.5);

struct GateSample {
    std::vector<double> z;
    // true exactly when 0 < mu + eps < 1: the straight-through gradient mask.
    std::vector<std::uint8_t> pass_through;
};

GateSample sample_gates(const GateBank& bank, RngStream& rng);

double norm_cdf(double x);
double norm_pdf(double x);

// Closed-form E(z) of the clipped gaussian gate.
double expected_gate(double mu, double sigma);

// P(z > 0) = Phi(mu / sigma).
double open_probability(double mu, double sigma);

// Gate value with the noise removed: clamp(mu, 0, 1).
double deterministic_gate(double mu);

struct RegResult {
    double value = 0.0;
    std::vector<double> grad_mu;
};

// Expected-L0 regularizer magnitude lambda * sum_i P(z[i] > 0) and its
// mu gradient. The trainer subtracts this term from the loss.
RegResult reg_l0(const GateBank& bank, double lambda);

// Expected-L1 counterpart: lambda * sum_i E(z[i]).
RegResult reg_l1(const GateBank& bank, double lambda);

// Scalar derivatives, used per batch index by the trainer.
double reg_l0_grad_mu(double mu, double sigma);
double reg_l1_grad_mu(double mu, double sigma);

} // namespace prae
