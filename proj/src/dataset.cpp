#include "prae/dataset.hpp"

#include "prae/linalg.hpp"
#include "prae/rng.hpp"

#include <algorithm>
#include <cmath>

namespace prae {

namespace {

// E‖g‖ for g ~ N(0, I_d): sqrt(2) * Γ((d+1)/2) / Γ(d/2), via lgamma.
double chi_mean(int d) {
    return std::sqrt(2.0) * std::exp(std::lgamma((d + 1) / 2.0) - std::lgamma(d / 2.0));
}

void shuffle_rows(LabeledDataset& data, RngStream& rng) {
    const int n = data.n();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    Mat x(n, data.dim());
    std::vector<std::uint8_t> labels(data.has_labels ? n : 0);
    for (int i = 0; i < n; ++i) {
        const double* src = data.x.row(order[i]);
        std::copy(src, src + data.dim(), x.row(i));
        if (data.has_labels) labels[i] = data.labels[order[i]];
    }
    data.x = std::move(x);
    data.labels = std::move(labels);
}

} // namespace

LabeledDataset gen_linear(int n, int dim, int intrinsic_dim, double outlier_fraction,
                          double noise_var, std::uint64_t seed) {
    if (intrinsic_dim >= dim)
        throw ConfigError("gen_linear: intrinsic dimension " + std::to_string(intrinsic_dim) +
                          " must be below the ambient dimension " + std::to_string(dim));
    if (intrinsic_dim < 1 || n < 1) throw ConfigError("gen_linear: need n >= 1 and intrinsic >= 1");
    if (outlier_fraction < 0.0 || outlier_fraction >= 1.0)
        throw ConfigError("gen_linear: outlier fraction must lie in [0, 1)");
    if (noise_var < 0.0) throw ConfigError("gen_linear: negative noise variance");

    const int n_out = static_cast<int>(outlier_fraction * n);
    const int n_in = n - n_out;

    RngStream basis_rng(seed, 0), inlier_rng(seed, 1), outlier_rng(seed, 2);
    RngStream noise_rng(seed, 3), shuffle_rng(seed, 4);

    Mat g(dim, intrinsic_dim);
    for (double& v : g.a) v = basis_rng.gaussian();
    Mat basis = linalg::orthonormalize_columns(g);

    LabeledDataset data;
    data.x.assign(n, dim);
    data.labels.assign(n, 0);
    data.has_labels = true;
    data.true_basis = basis;
    data.has_basis = true;
    data.meta = "linear n=" + std::to_string(n) + " dim=" + std::to_string(dim) +
                " intrinsic=" + std::to_string(intrinsic_dim) + " r=" + std::to_string(outlier_fraction);

    const double scale = 1.0 / chi_mean(intrinsic_dim);
    std::vector<double> full(dim), coords(intrinsic_dim);
    for (int i = 0; i < n_in; ++i) {
        for (int j = 0; j < dim; ++j) full[j] = inlier_rng.gaussian();
        for (int k = 0; k < intrinsic_dim; ++k) {
            double c = 0.0;
            for (int j = 0; j < dim; ++j) c += basis(j, k) * full[j];
            coords[k] = c;
        }
        double* row = data.x.row(i);
        for (int j = 0; j < dim; ++j) {
            double v = 0.0;
            for (int k = 0; k < intrinsic_dim; ++k) v += basis(j, k) * coords[k];
            row[j] = scale * v;
        }
    }
    const double out_std = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int i = n_in; i < n; ++i) {
        double* row = data.x.row(i);
        for (int j = 0; j < dim; ++j) row[j] = out_std * outlier_rng.gaussian();
        data.labels[i] = 1;
    }
    if (noise_var > 0.0) {
        const double noise_std = std::sqrt(noise_var);
        for (double& v : data.x.a) v += noise_std * noise_rng.gaussian();
    }
    shuffle_rows(data, shuffle_rng);
    return data;
}

LabeledDataset gen_swiss_roll(int n_in, int n_out, double sigma_n2, std::uint64_t seed) {
    if (n_in < 0 || n_out < 0) throw ConfigError("gen_swiss_roll: negative counts");
    if (sigma_n2 <= 0.0) throw ConfigError("gen_swiss_roll: sigma_n2 must be positive");

    RngStream in_rng(seed, 0), out_rng(seed, 1), shuffle_rng(seed, 2);

    LabeledDataset data;
    data.x.assign(n_in + n_out, 3);
    data.labels.assign(n_in + n_out, 0);
    data.has_labels = true;
    data.meta = "swiss n_in=" + std::to_string(n_in) + " n_out=" + std::to_string(n_out) +
                " sigma_n2=" + std::to_string(sigma_n2);

    for (int i = 0; i < n_in; ++i) {
        double t = in_rng.uniform(1.5 * M_PI, 4.5 * M_PI);
        double h = in_rng.uniform(0.0, 0.1);
        double* row = data.x.row(i);
        row[0] = t * std::cos(t);
        row[1] = h;
        row[2] = t * std::sin(t);
    }
    const double out_std = std::sqrt(sigma_n2);
    for (int i = n_in; i < n_in + n_out; ++i) {
        double* row = data.x.row(i);
        for (int j = 0; j < 3; ++j) row[j] = out_std * out_rng.gaussian();
        data.labels[i] = 1;
    }
    shuffle_rows(data, shuffle_rng);
    return data;
}

std::pair<LabeledDataset, StandardizeParams> standardize(const LabeledDataset& data) {
    const int n = data.n(), d = data.dim();
    StandardizeParams p;
    p.mean.assign(d, 0.0);
    p.stddev.assign(d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) p.mean[j] += data.x(i, j);
    for (int j = 0; j < d; ++j) p.mean[j] /= n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            double dev = data.x(i, j) - p.mean[j];
            p.stddev[j] += dev * dev;
        }
    for (int j = 0; j < d; ++j) p.stddev[j] = std::max(std::sqrt(p.stddev[j] / n), 1e-12);

    LabeledDataset out = data;
    out.x = apply_standardize(p, data.x);
    return {std::move(out), std::move(p)};
}

Mat apply_standardize(const StandardizeParams& params, const Mat& x) {
    require_shape(static_cast<int>(params.mean.size()) == x.cols, "apply_standardize: column mismatch");
    Mat out = x;
    for (int i = 0; i < out.rows; ++i)
        for (int j = 0; j < out.cols; ++j) out(i, j) = (out(i, j) - params.mean[j]) / params.stddev[j];
    return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double holdout_fraction,
                                                std::uint64_t seed) {
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw ConfigError("split: holdout fraction must lie strictly between 0 and 1");
    const int n = data.n();
    const int n_hold = static_cast<int>(std::llround(holdout_fraction * n));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    RngStream rng(seed, 7);
    rng.shuffle(order);

    auto take = [&](int from, int count) {
        LabeledDataset part;
        part.x.assign(count, data.dim());
        part.has_labels = data.has_labels;
        if (data.has_labels) part.labels.assign(count, 0);
        part.true_basis = data.true_basis;
        part.has_basis = data.has_basis;
        part.meta = data.meta;
        for (int i = 0; i < count; ++i) {
            int src = order[from + i];
            std::copy(data.x.row(src), data.x.row(src) + data.dim(), part.x.row(i));
            if (data.has_labels) part.labels[i] = data.labels[src];
        }
        return part;
    };
    return {take(0, n - n_hold), take(n - n_hold, n_hold)};
}

double estimate_lambda_me(const Mat& x) {
    if (x.rows == 0) throw ConfigError("estimate_lambda_me: empty data");
    double total = 0.0;
    for (int i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        for (int j = 0; j < x.cols; ++j) total += row[j] * row[j];
    }
    return total / x.rows;
}

} // namespace prae
