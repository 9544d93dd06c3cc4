#include "prae/metrics.hpp"

#include "prae/kernels.hpp"
#include "prae/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prae {

namespace {

void check_binary(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    require_shape(scores.size() == labels.size(), "scores/labels length mismatch");
    std::size_t pos = 0;
    for (std::uint8_t l : labels) pos += l ? 1 : 0;
    if (pos == 0 || pos == labels.size())
        throw ConfigError("labels contain a single class; AUC undefined");
}

// Indices sorted by score descending; equal scores grouped together.
std::vector<std::size_t> order_desc(const std::vector<double>& scores) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return idx;
}

} // namespace

double roc_auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    check_binary(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    std::size_t n_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j); // 1-based average over the tie group
        for (std::size_t k = i; k < j; ++k)
            if (labels[idx[k]]) {
                rank_sum_pos += avg_rank;
                ++n_pos;
            }
        i = j;
    }
    const double n_neg = static_cast<double>(n - n_pos);
    return (rank_sum_pos - 0.5 * n_pos * (n_pos + 1.0)) / (static_cast<double>(n_pos) * n_neg);
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    check_binary(scores, labels);
    std::vector<std::size_t> idx = order_desc(scores);
    double n_pos = 0, n_neg = 0;
    for (std::uint8_t l : labels) (l ? n_pos : n_neg) += 1.0;

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    double tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) (labels[idx[k]] ? tp : fp) += 1.0;
        curve.points.emplace_back(fp / n_neg, tp / n_pos);
        i = j;
    }
    double area = 0.0;
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        auto [x0, y0] = curve.points[p - 1];
        auto [x1, y1] = curve.points[p];
        area += (x1 - x0) * 0.5 * (y0 + y1);
    }
    curve.auc = area;
    return curve;
}

MaxF1Result max_f1(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    require_shape(scores.size() == labels.size(), "scores/labels length mismatch");
    double n_pos = 0;
    for (std::uint8_t l : labels) n_pos += l ? 1.0 : 0.0;
    if (n_pos == 0.0) throw ConfigError("max_f1: no positive labels");

    std::vector<std::size_t> idx = order_desc(scores);
    MaxF1Result best;
    best.threshold = scores[idx[0]];
    double tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) (labels[idx[k]] ? tp : fp) += 1.0;
        double precision = tp / (tp + fp);
        double recall = tp / n_pos;
        double f1 = tp == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
        if (f1 > best.f1) {
            best.f1 = f1;
            best.threshold = scores[idx[i]];
            best.precision = precision;
            best.recall = recall;
        }
        i = j;
    }
    return best;
}

SubspaceAngleResult subspace_angle(const Mat& b1, const Mat& b2) {
    require_shape(b1.rows == b2.rows, "subspace_angle: ambient dimensions differ");
    Mat q1 = linalg::orthonormalize_columns(b1);
    Mat q2 = linalg::orthonormalize_columns(b2);
    Mat m;
    kernels::matmul_tn(q1, q2, m);
    std::vector<double> sv = linalg::singular_values(m);

    SubspaceAngleResult res;
    const int k = std::min(q1.cols, q2.cols);
    for (int j = k - 1; j >= 0; --j)
        res.angles.push_back(std::acos(std::clamp(sv[j], -1.0, 1.0)));
    res.max_angle = res.angles.front();
    res.log10_angle = res.max_angle < 1e-16 ? -16.0 : std::max(std::log10(res.max_angle), -16.0);
    return res;
}

double mse(const Mat& x, const Mat& xhat) {
    require_shape(x.rows == xhat.rows && x.cols == xhat.cols, "mse: shape mismatch");
    require_shape(x.rows > 0, "mse: empty input");
    double total = 0.0;
    for (int i = 0; i < x.rows; ++i) {
        const double* a = x.row(i);
        const double* b = xhat.row(i);
        for (int j = 0; j < x.cols; ++j) {
            double d = a[j] - b[j];
            total += d * d;
        }
    }
    return total / x.rows;
}

} // namespace prae
