#pragma once

#include "prae/mat.hpp"

namespace prae::kernels {

// Kernel dispatch mode. Parallel kernels split work by output row only; every
// output element is accumulated by a single thread in a fixed order, so
// results are bit-identical to the serial reference for any thread count.
enum class Mode { Serial, Parallel };

Mode mode();
void set_mode(Mode m);
// Honors PRAE_KERNELS=serial|parallel when set.
void set_mode_from_env();

// C = A * B with A: m×k, B: k×n.
void matmul(const Mat& A, const Mat& B, Mat& C);
// C = Aᵀ * B with A: m×k, B: m×n, C: k×n.
void matmul_tn(const Mat& A, const Mat& B, Mat& C);

void transpose(const Mat& A, Mat& T);
// Y[i,:] += b for every row i.
void add_row_vector(Mat& Y, const std::vector<double>& b);
// out[j] = Σ_i A[i,j].
void colsum(const Mat& A, std::vector<double>& out);

namespace serial {
void matmul(const Mat& A, const Mat& B, Mat& C);
void matmul_tn(const Mat& A, const Mat& B, Mat& C);
} // namespace serial

namespace parallel {
void matmul(const Mat& A, const Mat& B, Mat& C);
void matmul_tn(const Mat& A, const Mat& B, Mat& C);
} // namespace parallel

} // namespace prae::kernels
