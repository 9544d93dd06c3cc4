#pragma once

#include "prae/mat.hpp"

#include <vector>

namespace prae::linalg {

struct SvdResult {
    std::vector<double> singular_values; // descending
    Mat v;                               // right singular vectors as columns, n×n
};

// One-sided Jacobi SVD. Exact enough for the small/skinny matrices this
// project works with; deterministic sweep order.
SvdResult jacobi_svd(const Mat& a);

std::vector<double> singular_values(const Mat& a);

// Modified Gram-Schmidt with a second orthogonalization pass.
// Throws ConfigError if the columns are numerically rank-deficient.
Mat orthonormalize_columns(const Mat& b);

// Basis (d_ambient × k, orthonormal columns) of the top-k right singular
// subspace of x, whose rows are samples.
Mat principal_subspace(const Mat& x, int k);

// Sum of squared singular values of x beyond the first k, i.e. the squared
// distance of the rows to their best rank-k subspace. With center=true the
// subspace is affine (fit about the row mean), otherwise through the origin.
double pca_residual(const Mat& x, int k, bool center);

} // namespace prae::linalg
