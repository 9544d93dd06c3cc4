#include "prae/model.hpp"

#include "prae/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace prae {

const char* variant_name(PraeVariant v) { return v == PraeVariant::L0 ? "l0" : "l1"; }

PraeVariant variant_from_name(const std::string& name) {
    if (name == "l0") return PraeVariant::L0;
    if (name == "l1") return PraeVariant::L1;
    throw ConfigError("unknown variant: " + name + " (expected l0 or l1)");
}

double default_learning_rate(int n) {
    return std::clamp(n * 1e-6, 1e-4, 1e-2);
}

int default_batch_size(int n) { return std::min(n, 256); }

namespace {

PraeConfig resolve_config(const PraeConfig& cfg, int n, int dim) {
    if (cfg.lambda < 0.0) throw ConfigError("lambda must be non-negative");
    if (cfg.epochs < 0) throw ConfigError("epochs must be non-negative");
    if (cfg.sigma <= 0.0) throw ConfigError("sigma must be positive");
    if (cfg.latent_dim < 1) throw ConfigError("latent dimension must be >= 1");
    if (cfg.latent_dim >= dim)
        throw ConfigError("latent dimension " + std::to_string(cfg.latent_dim) +
                          " must be below the input dimension " + std::to_string(dim));
    for (int h : cfg.hidden_widths)
        if (h < 1) throw ConfigError("hidden widths must be >= 1");
    if (cfg.learning_rate < 0.0) throw ConfigError("learning rate must be positive");
    PraeConfig r = cfg;
    if (r.learning_rate == 0.0) r.learning_rate = default_learning_rate(n);
    if (r.batch_size == 0) r.batch_size = default_batch_size(n);
    if (r.batch_size < 1) throw ConfigError("batch size must be >= 1");
    return r;
}

} // namespace

PraeTrainer::PraeTrainer(const Mat& x, const PraeConfig& config, bool plain_ae)
    : x_(x),
      shuffle_rng_(config.seed, 1),
      gate_rng_(config.seed, 2),
      plain_(plain_ae) {
    if (x_.rows < 2) throw ConfigError("training data needs at least 2 rows");
    PraeConfig cfg = resolve_config(config, x_.rows, x_.cols);

    model_.config = cfg;
    model_.plain_ae = plain_;
    std::vector<LayerSpec> specs =
        autoencoder_specs(x_.cols, cfg.hidden_widths, cfg.latent_dim, cfg.activation, cfg.leaky_slope);
    model_.net = init_dense_net(specs, cfg.latent_dim, splitmix64(cfg.seed));
    model_.gates = make_gate_bank(x_.rows, cfg.sigma, plain_ ? kMuMax : cfg.mu_init);

    inv_sq_norm_.assign(x_.rows, 1.0);
    if (cfg.normalize_recon) {
        for (int i = 0; i < x_.rows; ++i) {
            double sq = 0.0;
            const double* row = x_.row(i);
            for (int j = 0; j < x_.cols; ++j) sq += row[j] * row[j];
            inv_sq_norm_[i] = 1.0 / std::max(sq, 1e-12);
        }
    }

    net_adam_ = make_adam(model_.net, cfg.learning_rate);
    if (!plain_) {
        mu_m_.assign(x_.rows, 0.0);
        mu_v_.assign(x_.rows, 0.0);
        mu_t_.assign(x_.rows, 0);
    }
}

double PraeTrainer::step(const std::vector<int>& batch_rows) {
    const PraeConfig& cfg = model_.config;
    const int b = static_cast<int>(batch_rows.size());
    const int d = x_.cols;
    require_shape(b > 0, "prae step: empty batch");

    batch_x_.assign(b, d);
    for (int i = 0; i < b; ++i)
        std::copy(x_.row(batch_rows[i]), x_.row(batch_rows[i]) + d, batch_x_.row(i));

    forward(model_.net, batch_x_, cache_);
    const Mat& recon = reconstruction(cache_);

    std::vector<double> r(b, 0.0);
    for (int i = 0; i < b; ++i) {
        const double* xr = batch_x_.row(i);
        const double* hr = recon.row(i);
        double sq = 0.0;
        for (int j = 0; j < d; ++j) {
            double diff = xr[j] - hr[j];
            sq += diff * diff;
        }
        r[i] = sq * inv_sq_norm_[batch_rows[i]];
    }

    GateSample gs;
    RegResult reg;
    if (plain_) {
        gs.z.assign(b, 1.0);
        gs.pass_through.assign(b, 0);
        reg.grad_mu.assign(b, 0.0);
    } else {
        GateBank batch_bank;
        batch_bank.sigma = model_.gates.sigma;
        batch_bank.mu.resize(b);
        for (int i = 0; i < b; ++i) batch_bank.mu[i] = model_.gates.mu[batch_rows[i]];
        gs = sample_gates(batch_bank, gate_rng_);
        reg = cfg.variant == PraeVariant::L0 ? reg_l0(batch_bank, cfg.lambda)
                                             : reg_l1(batch_bank, cfg.lambda);
    }

    double loss = -reg.value;
    for (int i = 0; i < b; ++i) loss += gs.z[i] * r[i];
    if (!std::isfinite(loss)) {
        int offender = batch_rows[0];
        for (int i = 0; i < b; ++i)
            if (!std::isfinite(r[i])) {
                offender = batch_rows[i];
                break;
            }
        throw TrainingError(epoch_, offender);
    }

    out_grad_.assign(b, d);
    for (int i = 0; i < b; ++i) {
        const double w = 2.0 * gs.z[i] * inv_sq_norm_[batch_rows[i]];
        const double* xr = batch_x_.row(i);
        const double* hr = recon.row(i);
        double* gr = out_grad_.row(i);
        for (int j = 0; j < d; ++j) gr[j] = w * (hr[j] - xr[j]);
    }
    backward(model_.net, cache_, out_grad_, grads_);
    adam_step(net_adam_, model_.net, grads_);

    if (!plain_) {
        const AdamState& a = net_adam_; // shared hyperparameters
        for (int i = 0; i < b; ++i) {
            const int s = batch_rows[i];
            const double g = r[i] * (gs.pass_through[i] ? 1.0 : 0.0) - reg.grad_mu[i];
            mu_t_[s] += 1;
            mu_m_[s] = a.beta1 * mu_m_[s] + (1.0 - a.beta1) * g;
            mu_v_[s] = a.beta2 * mu_v_[s] + (1.0 - a.beta2) * g * g;
            const double mhat = mu_m_[s] / (1.0 - std::pow(a.beta1, static_cast<double>(mu_t_[s])));
            const double vhat = mu_v_[s] / (1.0 - std::pow(a.beta2, static_cast<double>(mu_t_[s])));
            double mu = model_.gates.mu[s] - a.lr * mhat / (std::sqrt(vhat) + a.eps);
            model_.gates.mu[s] = std::clamp(mu, kMuMin, kMuMax);
        }
    }
    return loss;
}

void PraeTrainer::run_epoch() {
    const int n = x_.rows;
    const int batch = model_.config.batch_size;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    shuffle_rng_.shuffle(order);

    double epoch_loss = 0.0;
    std::vector<int> rows;
    for (int at = 0; at < n; at += batch) {
        rows.assign(order.begin() + at, order.begin() + std::min(at + batch, n));
        epoch_loss += step(rows);
    }

    TrainLogRow row;
    row.epoch = epoch_;
    row.loss = epoch_loss;
    double gate_sum = 0.0;
    int open = 0;
    for (double mu : model_.gates.mu) {
        double g = deterministic_gate(mu);
        gate_sum += g;
        if (g >= 0.1) ++open;
    }
    row.mean_gate = gate_sum / n;
    row.open_count = open;
    model_.training_log.push_back(row);
    ++epoch_;
}

PraeModel train_prae(const LabeledDataset& data, const PraeConfig& config) {
    PraeTrainer trainer(data.x, config, false);
    for (int e = 0; e < trainer.model().config.epochs; ++e) trainer.run_epoch();
    return trainer.take_model();
}

PraeModel train_plain_ae(const LabeledDataset& data, const PraeConfig& config) {
    PraeTrainer trainer(data.x, config, true);
    for (int e = 0; e < trainer.model().config.epochs; ++e) trainer.run_epoch();
    return trainer.take_model();
}

AnomalyScores score_in_sample(const PraeModel& model) {
    AnomalyScores s;
    s.source = ScoreSource::InSampleGate;
    s.scores.resize(model.gates.mu.size());
    for (std::size_t i = 0; i < s.scores.size(); ++i)
        s.scores[i] = 1.0 - deterministic_gate(model.gates.mu[i]);
    return s;
}

AnomalyScores score_out_of_sample(const PraeModel& model, const Mat& new_data) {
    require_shape(new_data.cols == model.net.input_width(),
                  "score_out_of_sample: data has " + std::to_string(new_data.cols) +
                      " columns, model expects " + std::to_string(model.net.input_width()));
    AnomalyScores s;
    s.source = ScoreSource::OutOfSampleReconError;
    s.scores.resize(new_data.rows);
    ForwardCache cache;
    forward(model.net, new_data, cache);
    const Mat& recon = reconstruction(cache);
    for (int i = 0; i < new_data.rows; ++i) {
        const double* xr = new_data.row(i);
        const double* hr = recon.row(i);
        double sq = 0.0, norm = 0.0;
        for (int j = 0; j < new_data.cols; ++j) {
            double diff = xr[j] - hr[j];
            sq += diff * diff;
            norm += xr[j] * xr[j];
        }
        s.scores[i] = model.config.normalize_recon ? sq / std::max(norm, 1e-12) : sq;
    }
    return s;
}

std::vector<std::uint8_t> classify(const AnomalyScores& scores, double thresh) {
    if (scores.source != ScoreSource::InSampleGate)
        throw ConfigError("classify expects in-sample gate scores");
    std::vector<std::uint8_t> outlier(scores.scores.size());
    for (std::size_t i = 0; i < outlier.size(); ++i)
        outlier[i] = scores.scores[i] > 1.0 - thresh ? 1 : 0;
    return outlier;
}

std::vector<std::uint8_t> selected_mask(const PraeModel& model, double thresh) {
    std::vector<std::uint8_t> keep(model.gates.mu.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        keep[i] = deterministic_gate(model.gates.mu[i]) >= thresh ? 1 : 0;
    return keep;
}

double prae_mu_gradient(PraeVariant variant, double lambda, double sigma, double recon_err, double mu,
                        bool pass_through) {
    double reg_grad = variant == PraeVariant::L0 ? lambda * reg_l0_grad_mu(mu, sigma)
                                                 : lambda * reg_l1_grad_mu(mu, sigma);
    return recon_err * (pass_through ? 1.0 : 0.0) - reg_grad;
}

std::vector<SweepRow> lambda_sweep(const LabeledDataset& train, const LabeledDataset& val,
                                   const std::vector<double>& lambdas, const PraeConfig& base,
                                   int repeats) {
    if (lambdas.empty()) throw ConfigError("lambda_sweep: empty grid");
    if (repeats < 1) throw ConfigError("lambda_sweep: repeats must be >= 1");
    const int cells = static_cast<int>(lambdas.size()) * repeats;
    std::vector<SweepRow> rows(cells);

#pragma omp parallel for schedule(dynamic)
    for (int cell = 0; cell < cells; ++cell) {
        const int li = cell / repeats;
        const int rep = cell % repeats;
        PraeConfig cfg = base;
        cfg.lambda = lambdas[li];
        cfg.seed = splitmix64(splitmix64(base.seed) ^ (0x9E3779B97F4A7C15ULL * (cell + 1)));
        PraeModel model = train_prae(train, cfg);

        SweepRow row;
        row.lambda = lambdas[li];
        row.repeat = rep;
        if (train.has_labels) {
            row.has_f1 = true;
            row.f1 = max_f1(score_in_sample(model).scores, train.labels).f1;
        }
        std::vector<double> errs = score_out_of_sample(model, val.x).scores;
        double total = 0.0;
        for (double e : errs) total += e;
        row.val_mse = total / errs.size();
        rows[cell] = row;
    }
    return rows;
}

} // namespace prae
