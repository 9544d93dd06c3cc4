#pragma once

#include "prae/mat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prae {

// Row-major sample matrix plus optional ground truth used only by evaluation.
struct LabeledDataset {
    Mat x;
    std::vector<std::uint8_t> labels; // 1 = anomaly
    bool has_labels = false;
    Mat true_basis; // D×d orthonormal columns, when generated
    bool has_basis = false;
    std::string meta;

    int n() const { return x.rows; }
    int dim() const { return x.cols; }
};

struct StandardizeParams {
    std::vector<double> mean;
    std::vector<double> stddev; // floored at 1e-12
};

// Linear RSR generator: inliers are isotropic gaussians projected onto a
// random d-dimensional subspace and scaled to unit expected norm; outliers
// are N(0, I/D) so their expected norm matches; gaussian noise of variance
// noise_var on every entry; rows shuffled.
LabeledDataset gen_linear(int n, int dim, int intrinsic_dim, double outlier_fraction,
                          double noise_var, std::uint64_t seed);

// Narrow swiss roll (t, h) -> (t cos t, h, t sin t) on [3π/2, 9π/2] × [0, 0.1]
// plus n_out gaussian outliers from N(0, sigma_n2 * I_3); rows shuffled.
LabeledDataset gen_swiss_roll(int n_in, int n_out, double sigma_n2, std::uint64_t seed);

std::pair<LabeledDataset, StandardizeParams> standardize(const LabeledDataset& data);
Mat apply_standardize(const StandardizeParams& params, const Mat& x);

// Deterministic shuffled split; labels and basis travel with their rows.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data, double holdout_fraction,
                                                std::uint64_t seed);

// Mean energy ME = (1/N) Σ ‖x_i‖²; the λ scale at which gate inclusion flips.
double estimate_lambda_me(const Mat& x);

} // namespace prae
