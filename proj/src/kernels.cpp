#include "prae/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <algorithm>
#include <cstring>
#include <omp.h>

namespace prae::kernels {

namespace {

std::atomic<Mode> g_mode{Mode::Parallel};

// Single per-row accumulation primitive shared by the serial and parallel
// drivers. Keeping the inner loop in one noinline function pins its codegen,
// which is what makes the two drivers produce bit-identical results.
__attribute__((noinline)) void axpy_row(double* c, const double* b, double a, int n) {
    for (int j = 0; j < n; ++j) c[j] += a * b[j];
}

void check_matmul(const Mat& A, const Mat& B) {
    require_shape(A.cols == B.rows, "matmul: inner dimensions disagree (" +
                                        std::to_string(A.cols) + " vs " + std::to_string(B.rows) + ")");
}

void check_matmul_tn(const Mat& A, const Mat& B) {
    require_shape(A.rows == B.rows, "matmul_tn: row counts disagree (" +
                                        std::to_string(A.rows) + " vs " + std::to_string(B.rows) + ")");
}

} // namespace

Mode mode() { return g_mode.load(std::memory_order_relaxed); }
void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }

void set_mode_from_env() {
    const char* v = std::getenv("PRAE_KERNELS");
    if (!v) return;
    if (std::strcmp(v, "serial") == 0) set_mode(Mode::Serial);
    if (std::strcmp(v, "parallel") == 0) set_mode(Mode::Parallel);
}

// B is consumed in panels of kKBlock rows so a panel stays cache-resident
// across the whole batch. For every output element the k-accumulation order
// is still 0..K ascending, so blocked, unblocked, serial, and parallel runs
// all produce identical bits.
constexpr int kKBlock = 64;

namespace serial {

void matmul(const Mat& A, const Mat& B, Mat& C) {
    check_matmul(A, B);
    C.assign(A.rows, B.cols);
    for (int k0 = 0; k0 < A.cols; k0 += kKBlock) {
        const int k1 = std::min(k0 + kKBlock, A.cols);
        for (int i = 0; i < A.rows; ++i) {
            double* ci = C.row(i);
            for (int k = k0; k < k1; ++k) axpy_row(ci, B.row(k), A(i, k), B.cols);
        }
    }
}

void matmul_tn(const Mat& A, const Mat& B, Mat& C) {
    check_matmul_tn(A, B);
    C.assign(A.cols, B.cols);
    for (int r0 = 0; r0 < A.rows; r0 += kKBlock) {
        const int r1 = std::min(r0 + kKBlock, A.rows);
        for (int k = 0; k < A.cols; ++k) {
            double* ck = C.row(k);
            for (int r = r0; r < r1; ++r) axpy_row(ck, B.row(r), A(r, k), B.cols);
        }
    }
}

} // namespace serial

namespace parallel {

void matmul(const Mat& A, const Mat& B, Mat& C) {
    check_matmul(A, B);
    C.assign(A.rows, B.cols);
#pragma omp parallel
    for (int k0 = 0; k0 < A.cols; k0 += kKBlock) {
        const int k1 = std::min(k0 + kKBlock, A.cols);
#pragma omp for schedule(static)
        for (int i = 0; i < A.rows; ++i) {
            double* ci = C.row(i);
            for (int k = k0; k < k1; ++k) axpy_row(ci, B.row(k), A(i, k), B.cols);
        }
    }
}

void matmul_tn(const Mat& A, const Mat& B, Mat& C) {
    check_matmul_tn(A, B);
    C.assign(A.cols, B.cols);
#pragma omp parallel
    for (int r0 = 0; r0 < A.rows; r0 += kKBlock) {
        const int r1 = std::min(r0 + kKBlock, A.rows);
#pragma omp for schedule(static)
        for (int k = 0; k < A.cols; ++k) {
            double* ck = C.row(k);
            for (int r = r0; r < r1; ++r) axpy_row(ck, B.row(r), A(r, k), B.cols);
        }
    }
}

} // namespace parallel

namespace {

// Below this flop count the parallel-region overhead outweighs the work.
// Dispatch only; both paths share the same per-row primitive, so the choice
// never changes a single bit of output.
constexpr long kParallelWorkCutoff = 1L << 16;

} // namespace

void matmul(const Mat& A, const Mat& B, Mat& C) {
    long work = static_cast<long>(A.rows) * A.cols * B.cols;
    if (mode() == Mode::Parallel && work >= kParallelWorkCutoff)
        parallel::matmul(A, B, C);
    else
        serial::matmul(A, B, C);
}

void matmul_tn(const Mat& A, const Mat& B, Mat& C) {
    long work = static_cast<long>(A.rows) * A.cols * B.cols;
    if (mode() == Mode::Parallel && work >= kParallelWorkCutoff)
        parallel::matmul_tn(A, B, C);
    else
        serial::matmul_tn(A, B, C);
}

void transpose(const Mat& A, Mat& T) {
    T.assign(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
}

void add_row_vector(Mat& Y, const std::vector<double>& b) {
    require_shape(static_cast<int>(b.size()) == Y.cols, "add_row_vector: length mismatch");
    for (int i = 0; i < Y.rows; ++i) {
        double* yi = Y.row(i);
        for (int j = 0; j < Y.cols; ++j) yi[j] += b[j];
    }
}

void colsum(const Mat& A, std::vector<double>& out) {
    out.assign(A.cols, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        const double* ai = A.row(i);
        for (int j = 0; j < A.cols; ++j) out[j] += ai[j];
    }
}

} // namespace prae::kernels
