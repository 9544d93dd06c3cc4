#pragma once

#include "prae/dataset.hpp"
#include "prae/gates.hpp"
#include "prae/nn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prae {

enum class PraeVariant { L0, L1 };

const char* variant_name(PraeVariant v);
PraeVariant variant_from_name(const std::string& name);

struct PraeConfig {
    PraeVariant variant = PraeVariant::L1;
    double lambda = 1.0;
    int epochs = 500;
    int batch_size = 0;          // 0 → min(N, 256)
    double learning_rate = 0.0;  // 0 → default_learning_rate(N)
    double sigma = 0.5;
    std::vector<int> hidden_widths = {10, 10, 10, 10, 10};
    int latent_dim = 1;
    bool normalize_recon = false; // divide each ‖x−x̂‖² by ‖x‖²
    std::uint64_t seed = 0;
    Activation activation = Activation::LeakyReLU; // hidden layers; final decoder layer stays linear
    double leaky_slope = 0.01;
    double mu_init = 0.5;
};

// N·1e-6, kept inside [1e-4, 1e-2].
double default_learning_rate(int n);
int default_batch_size(int n);

struct TrainLogRow {
    int epoch = 0;
    double loss = 0.0;
    double mean_gate = 0.0; // mean of clamp(mu, 0, 1)
    int open_count = 0;     // #{clamp(mu) >= 0.1}
};

struct PraeModel {
    DenseNet net;
    GateBank gates;
    PraeConfig config;
    std::vector<TrainLogRow> training_log;
    bool plain_ae = false; // gates forced open, reconstruction-error scoring only
};

enum class ScoreSource { InSampleGate, OutOfSampleReconError };

// Higher score = more anomalous.
struct AnomalyScores {
    std::vector<double> scores;
    ScoreSource source = ScoreSource::InSampleGate;
};

struct TrainingError : std::runtime_error {
    int epoch;
    int sample;
    TrainingError(int epoch_, int sample_)
        : std::runtime_error("training produced a non-finite loss at epoch " + std::to_string(epoch_) +
                             " (sample " + std::to_string(sample_) + ")"),
          epoch(epoch_), sample(sample_) {}
};

// One Monte-Carlo gradient step at a time. Loss on a batch is
// Σ z[i]·r_i − λ·Reg(batch) with r_i the (optionally normalized) squared
// reconstruction error and one gate draw per sample per step.
class PraeTrainer {
  public:
    PraeTrainer(const Mat& x, const PraeConfig& config, bool plain_ae = false);

    double step(const std::vector<int>& batch_rows);
    void run_epoch();

    const PraeModel& model() const { return model_; }
    PraeModel take_model() { return std::move(model_); }

  private:
    PraeModel model_;
    Mat x_;
    std::vector<double> inv_sq_norm_;
    AdamState net_adam_;
    std::vector<double> mu_m_, mu_v_;
    std::vector<long long> mu_t_;
    RngStream shuffle_rng_;
    RngStream gate_rng_;
    ForwardCache cache_;
    Gradients grads_;
    Mat batch_x_, out_grad_;
    int epoch_ = 0;
    bool plain_;
};

// Shuffled mini-batch training, deterministic for a fixed seed.
PraeModel train_prae(const LabeledDataset& data, const PraeConfig& config);

// Ablation baseline: identical loop with z ≡ 1 and no regularizer; the
// returned model's gates are pinned open, so only reconstruction scoring
// is meaningful.
PraeModel train_plain_ae(const LabeledDataset& data, const PraeConfig& config);

// scores[i] = 1 − clamp(mu[i], 0, 1); strictly anti-monotone in mu.
AnomalyScores score_in_sample(const PraeModel& model);

// scores[i] = ‖x_i − x̂_i‖², normalized by ‖x_i‖² when the model trained that way.
AnomalyScores score_out_of_sample(const PraeModel& model, const Mat& new_data);

// true = outlier, decided by clamp(mu) < thresh (equivalently score > 1 − thresh).
std::vector<std::uint8_t> classify(const AnomalyScores& scores, double thresh = 0.1);

// Rows kept as inliers at the given threshold.
std::vector<std::uint8_t> selected_mask(const PraeModel& model, double thresh = 0.1);

// Gradient of the sampled per-sample loss term wrt mu: straight-through
// clamp for the reconstruction part, analytic expectation for the regularizer.
double prae_mu_gradient(PraeVariant variant, double lambda, double sigma, double recon_err, double mu,
                        bool pass_through);

struct SweepRow {
    double lambda = 0.0;
    int repeat = 0;
    bool has_f1 = false;
    double f1 = 0.0;
    double val_mse = 0.0;
};

// One trained model per (lambda, repeat) cell, each on a fresh seed stream;
// cells may run in parallel, output order is fixed.
std::vector<SweepRow> lambda_sweep(const LabeledDataset& train, const LabeledDataset& val,
                                   const std::vector<double>& lambdas, const PraeConfig& base,
                                   int repeats = 1);

} // namespace prae
