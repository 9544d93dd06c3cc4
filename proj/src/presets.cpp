#include "prae/presets.hpp"

#include "prae/linalg.hpp"
#include "prae/rng.hpp"

#include <cmath>

namespace prae::presets {

TrainVal fig3_data(std::uint64_t seed) {
    // One draw of 400 rows so train and validation share the same subspace,
    // partitioned label-stratified into exact 150/50 halves.
    LabeledDataset all = gen_linear(400, 100, 2, 0.25, 1e-8, seed);
    TrainVal tv;
    for (LabeledDataset* part : {&tv.train, &tv.val}) {
        part->x.assign(200, all.dim());
        part->labels.assign(200, 0);
        part->has_labels = true;
        part->true_basis = all.true_basis;
        part->has_basis = true;
        part->meta = all.meta;
    }
    int seen_in = 0, seen_out = 0, at_train = 0, at_val = 0;
    for (int i = 0; i < all.n(); ++i) {
        bool outlier = all.labels[i] != 0;
        bool to_train = outlier ? (seen_out++ < 50) : (seen_in++ < 150);
        LabeledDataset& dst = to_train ? tv.train : tv.val;
        int& at = to_train ? at_train : at_val;
        std::copy(all.x.row(i), all.x.row(i) + all.dim(), dst.x.row(at));
        dst.labels[at] = outlier ? 1 : 0;
        ++at;
    }
    return tv;
}

PraeConfig fig3_config(PraeVariant variant, std::uint64_t seed) {
    PraeConfig cfg;
    cfg.variant = variant;
    cfg.lambda = 1.0;
    cfg.epochs = 4000;
    cfg.learning_rate = 2e-3;
    cfg.batch_size = 32; // several net steps per gate step; keeps the early race benign
    cfg.hidden_widths = {10, 10, 10, 10, 10};
    cfg.latent_dim = 2;
    cfg.activation = Activation::LeakyReLU;
    cfg.normalize_recon = false;
    cfg.mu_init = 1.0; // full exclusion buffer while the net is still random
    cfg.seed = seed;
    return cfg;
}

std::vector<double> fig3_lambda_grid() { return {0.1, 0.25, 0.4, 0.55, 1.0, 3.0, 10.0}; }

LabeledDataset swiss_data(double sigma_n2, std::uint64_t seed) {
    return gen_swiss_roll(1000, 200, sigma_n2, seed);
}

PraeConfig swiss_config(PraeVariant variant, std::uint64_t seed) {
    PraeConfig cfg;
    cfg.variant = variant;
    // With the per-sample normalized loss the residual valley between the
    // fitted roll (~1e-3) and the gaussian blob (~0.1+) sits far below 1;
    // lambda must fall inside it, and smaller lambda also narrows the slab of
    // blob points the decoder's extended image can cover for free.
    cfg.lambda = 0.005;
    cfg.epochs = 800;
    cfg.learning_rate = 1.2e-3; // N·1e-6 at N=1200
    cfg.batch_size = 1200;      // full batch: one net step per gate step
    cfg.hidden_widths = {512, 256, 128, 64, 32};
    cfg.latent_dim = 2;
    cfg.activation = Activation::LeakyReLU;
    cfg.normalize_recon = true;
    cfg.seed = seed;
    return cfg;
}

LabeledDataset rsr_data(double outlier_fraction, std::uint64_t seed) {
    return gen_linear(2000, 50, 5, outlier_fraction, 1e-8, seed);
}

PraeConfig rsr_config(std::uint64_t seed) {
    PraeConfig cfg;
    cfg.variant = PraeVariant::L1;
    cfg.lambda = 0.1;
    cfg.epochs = 600;
    cfg.learning_rate = 2e-3; // N·1e-6 at N=2000
    cfg.batch_size = 256;
    cfg.hidden_widths = {};
    cfg.latent_dim = 5;
    cfg.activation = Activation::Linear;
    cfg.normalize_recon = false;
    cfg.seed = seed;
    return cfg;
}

OracleInstance oracle_instance(std::uint64_t seed, int n, int dim, int k) {
    if (dim <= k) throw ConfigError("oracle_instance: need dim > k");
    if (n < k + 2) throw ConfigError("oracle_instance: too few rows");
    RngStream rng(seed, 11);
    // Random orthonormal frame; inliers spread in span of the first k columns
    // at unit scale, outliers sit in the orthogonal complement at scale 1.5,
    // so the two residual scales are cleanly separated.
    Mat g(dim, dim);
    for (double& v : g.a) v = rng.gaussian();
    Mat q = linalg::orthonormalize_columns(g);

    const int n_out = std::max(1, n / 4);
    const int n_in = n - n_out;
    const double noise_std = 1e-3;

    OracleInstance inst;
    inst.k = k;
    inst.x.assign(n, dim);
    inst.inlier_mask.assign(n, 0);
    std::vector<double> coords(k);
    for (int i = 0; i < n_in; ++i) {
        double norm = 0.0;
        for (int c = 0; c < k; ++c) {
            coords[c] = rng.gaussian();
            norm += coords[c] * coords[c];
        }
        double scale = rng.uniform(0.7, 1.3) / std::sqrt(norm);
        for (int j = 0; j < dim; ++j) {
            double v = 0.0;
            for (int c = 0; c < k; ++c) v += q(j, c) * coords[c];
            inst.x(i, j) = scale * v + noise_std * rng.gaussian();
        }
        inst.inlier_mask[i] = 1;
    }
    for (int o = 0; o < n_out; ++o) {
        int dir = k + (o % (dim - k));
        for (int j = 0; j < dim; ++j)
            inst.x(n_in + o, j) = 1.5 * q(j, dir) + noise_std * rng.gaussian();
    }
    return inst;
}

PraeConfig oracle_config(std::uint64_t seed) {
    PraeConfig cfg;
    cfg.variant = PraeVariant::L1;
    cfg.lambda = 1.0;
    cfg.epochs = 6000;
    cfg.learning_rate = 1e-2;
    cfg.batch_size = 8;
    cfg.hidden_widths = {};
    cfg.latent_dim = 1;
    cfg.activation = Activation::Linear;
    cfg.mu_init = 1.0; // high-energy inliers must survive the warmup dip
    cfg.seed = seed;
    return cfg;
}

} // namespace prae::presets
