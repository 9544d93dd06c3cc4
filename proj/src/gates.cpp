#include "prae/gates.hpp"

#include "prae/mat.hpp"

#include <algorithm>
#include <cmath>

namespace prae {

GateBank make_gate_bank(int n, double sigma, double mu_init) {
    if (n < 1) throw ConfigError("make_gate_bank: need at least one sample");
    if (sigma <= 0.0) throw ConfigError("make_gate_bank: sigma must be positive");
    GateBank bank;
    bank.mu.assign(n, mu_init);
    bank.sigma = sigma;
    return bank;
}

GateSample sample_gates(const GateBank& bank, RngStream& rng) {
    GateSample s;
    const int n = bank.size();
    s.z.resize(n);
    s.pass_through.resize(n);
    for (int i = 0; i < n; ++i) {
        double raw = bank.mu[i] + bank.sigma * rng.gaussian();
        s.pass_through[i] = (raw > 0.0 && raw < 1.0) ? 1 : 0;
        s.z[i] = std::clamp(raw, 0.0, 1.0);
    }
    return s;
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double norm_pdf(double x) { return 0.3989422804014326779 * std::exp(-0.5 * x * x); }

double expected_gate(double mu, double sigma) {
    const double a = mu / sigma;
    const double b = (1.0 - mu) / sigma;
    double e = sigma * 0.3989422804014326779 * (std::exp(-0.5 * a * a) - std::exp(-0.5 * b * b)) +
               (mu - 1.0) * norm_cdf(b) - mu * norm_cdf(-a) + 1.0;
    // The closed form lives in [0,1]; cancellation in the saturated tails can
    // leave an eps-sized excursion.
    return std::clamp(e, 0.0, 1.0);
}

double open_probability(double mu, double sigma) { return norm_cdf(mu / sigma); }

double deterministic_gate(double mu) { return std::clamp(mu, 0.0, 1.0); }

double reg_l0_grad_mu(double mu, double sigma) { return norm_pdf(mu / sigma) / sigma; }

// d/dmu E(z) = Phi((1-mu)/sigma) - Phi(-mu/sigma) = P(0 < mu + eps < 1).
double reg_l1_grad_mu(double mu, double sigma) {
    return norm_cdf((1.0 - mu) / sigma) - norm_cdf(-mu / sigma);
}

RegResult reg_l0(const GateBank& bank, double lambda) {
    RegResult r;
    r.grad_mu.resize(bank.size());
    for (int i = 0; i < bank.size(); ++i) {
        r.value += open_probability(bank.mu[i], bank.sigma);
        r.grad_mu[i] = lambda * reg_l0_grad_mu(bank.mu[i], bank.sigma);
    }
    r.value *= lambda;
    return r;
}

RegResult reg_l1(const GateBank& bank, double lambda) {
    RegResult r;
    r.grad_mu.resize(bank.size());
    for (int i = 0; i < bank.size(); ++i) {
        r.value += expected_gate(bank.mu[i], bank.sigma);
        r.grad_mu[i] = lambda * reg_l1_grad_mu(bank.mu[i], bank.sigma);
    }
    r.value *= lambda;
    return r;
}

} // namespace prae
