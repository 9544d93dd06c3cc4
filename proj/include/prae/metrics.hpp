#pragma once

#include "prae/mat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace prae {

struct RocCurve {
    std::vector<std::pair<double, double>> points; // (fpr, tpr), (0,0) .. (1,1)
    double auc = 0.0;                              // trapezoidal area
};

struct MaxF1Result {
    double f1 = 0.0;
    double threshold = 0.0; // anomaly predicted at score >= threshold
    double precision = 0.0;
    double recall = 0.0;
};

struct SubspaceAngleResult {
    double max_angle = 0.0;            // radians
    double log10_angle = -16.0;        // floored at -16
    std::vector<double> angles;        // all principal angles, largest first
};

struct EvalReport {
    double auc = 0.0;
    double max_f1 = 0.0;
    double best_threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::optional<double> subspace_angle_rad;
    std::optional<double> subspace_log_angle;
    std::optional<double> val_mse;
};

// Mann–Whitney AUC via rank sums; ties earn half credit. Higher score means
// more anomalous; labels: 1 = anomaly. Throws on single-class labels.
double roc_auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels);

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels);

// Maximal F1 over all distinct score thresholds; F1 = 0 when TP = 0.
MaxF1Result max_f1(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels);

// Principal angles between the column spans, from singular values of B1ᵀB2
// after orthonormalization. Throws on rank-deficient input.
SubspaceAngleResult subspace_angle(const Mat& b1, const Mat& b2);

// Mean over rows of ‖x_i − x̂_i‖².
double mse(const Mat& x, const Mat& xhat);

} // namespace prae
