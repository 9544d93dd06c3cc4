#include "prae/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prae::linalg {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

SvdResult jacobi_svd(const Mat& a) {
    const int m = a.rows, n = a.cols;
    // Column-major working copy.
    std::vector<std::vector<double>> col(n, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) col[j][i] = a(i, j);

    Mat v(n, n);
    for (int j = 0; j < n; ++j) v(j, j) = 1.0;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = dot(col[p], col[p]);
                double beta = dot(col[q], col[q]);
                double gamma = dot(col[p], col[q]);
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                converged = false;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < m; ++i) {
                    double cp = col[p][i], cq = col[q][i];
                    col[p][i] = c * cp - s * cq;
                    col[q][i] = s * cp + c * cq;
                }
                for (int i = 0; i < n; ++i) {
                    double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (converged) break;
    }

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(col[j], col[j]));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sigma[i] > sigma[j]; });

    SvdResult out;
    out.singular_values.resize(n);
    out.v.assign(n, n);
    for (int j = 0; j < n; ++j) {
        out.singular_values[j] = sigma[order[j]];
        for (int i = 0; i < n; ++i) out.v(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(const Mat& a) {
    // Orientation does not change the spectrum; rotate the thinner side.
    if (a.cols <= a.rows) return jacobi_svd(a).singular_values;
    Mat t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return jacobi_svd(t).singular_values;
}

Mat orthonormalize_columns(const Mat& b) {
    const int m = b.rows, n = b.cols;
    Mat q = b;
    for (int j = 0; j < n; ++j) {
        double orig = 0.0;
        for (int i = 0; i < m; ++i) orig += q(i, j) * q(i, j);
        orig = std::sqrt(orig);
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                double proj = 0.0;
                for (int i = 0; i < m; ++i) proj += q(i, k) * q(i, j);
                for (int i = 0; i < m; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < m; ++i) nrm += q(i, j) * q(i, j);
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-10 * (1.0 + orig))
            throw ConfigError("orthonormalize_columns: column " + std::to_string(j) + " is rank-deficient");
        for (int i = 0; i < m; ++i) q(i, j) /= nrm;
    }
    return q;
}

Mat principal_subspace(const Mat& x, int k) {
    require_shape(k >= 1 && k <= x.cols, "principal_subspace: bad k");
    require_shape(x.rows >= 1, "principal_subspace: empty input");
    SvdResult svd = jacobi_svd(x);
    Mat basis(x.cols, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < x.cols; ++i) basis(i, j) = svd.v(i, j);
    return basis;
}

double pca_residual(const Mat& x, int k, bool center) {
    Mat w = x;
    if (center && w.rows > 0) {
        std::vector<double> mean(w.cols, 0.0);
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) mean[j] += w(i, j);
        for (int j = 0; j < w.cols; ++j) mean[j] /= w.rows;
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) w(i, j) -= mean[j];
    }
    std::vector<double> sv = singular_values(w);
    double residual = 0.0;
    for (std::size_t j = static_cast<std::size_t>(k); j < sv.size(); ++j) residual += sv[j] * sv[j];
    return residual;
}

} // namespace prae::linalg
