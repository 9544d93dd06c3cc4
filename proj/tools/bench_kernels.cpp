// Compares the serial reference kernels against the OpenMP ones on the
// matrix shapes the trainer actually hits, plus one full training step.

#include "prae/kernels.hpp"
#include "prae/model.hpp"
#include "prae/presets.hpp"
#include "prae/rng.hpp"

#include <cstdio>
#include <omp.h>

using namespace prae;

namespace {

Mat random_mat(int r, int c, RngStream& rng) {
    Mat m(r, c);
    for (double& v : m.a) v = rng.gaussian();
    return m;
}

double time_matmul(const Mat& a, const Mat& b, bool parallel, int reps) {
    Mat c;
    auto run = [&] {
        if (parallel)
            kernels::parallel::matmul(a, b, c);
        else
            kernels::serial::matmul(a, b, c);
    };
    run(); // warm up
    double t0 = omp_get_wtime();
    for (int i = 0; i < reps; ++i) run();
    return (omp_get_wtime() - t0) / reps;
}

void bench_shape(int m, int k, int n, RngStream& rng) {
    Mat a = random_mat(m, k, rng);
    Mat b = random_mat(k, n, rng);
    int reps = std::max(3, static_cast<int>(2e8 / (2.0 * m * k * n)));
    double ts = time_matmul(a, b, false, reps);
    double tp = time_matmul(a, b, true, reps);
    double flops = 2.0 * m * k * n;
    std::printf("matmul %4dx%4dx%4d  serial %8.3f ms (%6.2f GFLOP/s)  omp %8.3f ms (%6.2f GFLOP/s)  speedup %.2fx\n",
                m, k, n, ts * 1e3, flops / ts * 1e-9, tp * 1e3, flops / tp * 1e-9, ts / tp);
}

double time_train_step(bool parallel) {
    kernels::set_mode(parallel ? kernels::Mode::Parallel : kernels::Mode::Serial);
    LabeledDataset data = presets::swiss_data(1.0, 1);
    PraeConfig cfg = presets::swiss_config(PraeVariant::L1, 1);
    cfg.epochs = 0;
    PraeTrainer trainer(data.x, cfg);
    std::vector<int> batch(256);
    for (int i = 0; i < 256; ++i) batch[i] = i;
    trainer.step(batch); // warm up
    double t0 = omp_get_wtime();
    const int reps = 10;
    for (int i = 0; i < reps; ++i) trainer.step(batch);
    return (omp_get_wtime() - t0) / reps;
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    RngStream rng(1234);
    bench_shape(256, 3, 512, rng);
    bench_shape(256, 512, 256, rng);
    bench_shape(256, 256, 128, rng);
    bench_shape(512, 256, 256, rng);
    bench_shape(200, 100, 2, rng);

    double ts = time_train_step(false);
    double tp = time_train_step(true);
    std::printf("swiss-roll train step (batch 256): serial %.2f ms  omp %.2f ms  speedup %.2fx\n",
                ts * 1e3, tp * 1e3, ts / tp);
    kernels::set_mode(kernels::Mode::Parallel);
    return 0;
}
