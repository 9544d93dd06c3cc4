#pragma once

#include "prae/dataset.hpp"
#include "prae/model.hpp"

namespace prae::presets {

// Linear phase-transition experiment: 150 inliers on a 2-d subspace of R^100
// plus 50 gaussian outliers, with an equally sized validation set drawn from
// the same subspace.
struct TrainVal {
    LabeledDataset train;
    LabeledDataset val;
};
TrainVal fig3_data(std::uint64_t seed);
PraeConfig fig3_config(PraeVariant variant, std::uint64_t seed);
std::vector<double> fig3_lambda_grid();

// Narrow swiss roll, 1000 inliers + 200 gaussian outliers.
LabeledDataset swiss_data(double sigma_n2, std::uint64_t seed);
PraeConfig swiss_config(PraeVariant variant, std::uint64_t seed);

// Linear subspace recovery at desk scale: N=2000, D=50, d=5.
LabeledDataset rsr_data(double outlier_fraction, std::uint64_t seed);
PraeConfig rsr_config(std::uint64_t seed);

// Tiny well-separated instance for the brute-force oracle comparison:
// 6 near-collinear rows of unit scale plus 2 orthogonal far rows in R^3.
struct OracleInstance {
    Mat x;
    std::vector<std::uint8_t> inlier_mask; // ground truth, 1 = inlier
    int k = 1;
    double lambda = 1.0;
};
OracleInstance oracle_instance(std::uint64_t seed, int n = 8, int dim = 3, int k = 1);
PraeConfig oracle_config(std::uint64_t seed);

} // namespace prae::presets
