#include "prae/cli_actions.hpp"

#include "prae/csv.hpp"
#include "prae/linalg.hpp"
#include "prae/metrics.hpp"
#include "prae/model_io.hpp"
#include "prae/oracle.hpp"
#include "prae/presets.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace prae::cli {

std::vector<int> parse_arch(const std::string& arch) {
    std::vector<int> widths;
    if (arch.empty() || arch == "none") return widths;
    std::stringstream ss(arch);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        widths.push_back(std::stoi(tok));
    }
    return widths;
}

std::vector<double> parse_lambda_list(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        values.push_back(std::stod(tok));
    }
    return values;
}

namespace {

LabeledDataset synth_from_args(const SynthArgs& a) {
    if (a.kind == "linear") {
        double frac = a.r >= 0.0 ? a.r : (a.outliers + 0.5) / a.n;
        return gen_linear(a.n, a.dim, a.intrinsic, frac, a.noise_var, a.seed);
    }
    if (a.kind == "swiss") return gen_swiss_roll(a.n_in, a.n_out, a.sigma2, a.seed);
    throw ConfigError("unknown synth kind: " + a.kind);
}

} // namespace

int run_synth(const SynthArgs& args) {
    SynthArgs a = args;
    if (!a.preset.empty()) {
        if (a.preset == "fig3") {
            a.kind = "linear";
            a.n = 200; a.dim = 100; a.intrinsic = 2; a.outliers = 50; a.noise_var = 1e-8;
        } else if (a.preset == "rsr") {
            a.kind = "linear";
            a.n = 2000; a.dim = 50; a.intrinsic = 5; a.noise_var = 1e-8;
            if (a.r < 0.0) a.r = 0.5;
        } else if (a.preset.rfind("table1-sigma", 0) == 0) {
            a.kind = "swiss";
            a.n_in = 1000; a.n_out = 200;
            a.sigma2 = std::stod(a.preset.substr(std::string("table1-sigma").size()));
        } else {
            throw ConfigError("unknown synth preset: " + a.preset);
        }
    }
    LabeledDataset data = synth_from_args(a);
    save_csv(data, a.out);
    if (!a.basis_out.empty()) {
        if (!data.has_basis) throw ConfigError("--basis-out: this generator records no basis");
        save_matrix_csv(data.true_basis, a.basis_out);
    }
    int n_out = 0;
    for (std::uint8_t l : data.labels) n_out += l;
    std::cout << "wrote " << a.out << ": N=" << data.n() << " D=" << data.dim()
              << " outlier_fraction=" << format_double(static_cast<double>(n_out) / data.n()) << "\n";
    return 0;
}

namespace {

PraeConfig train_config_from_args(const TrainArgs& a, int n_rows) {
    PraeConfig cfg;
    bool preset_used = !a.preset.empty();
    if (preset_used) {
        PraeVariant v = variant_from_name(a.variant);
        if (a.preset == "fig3") {
            cfg = presets::fig3_config(v, a.seed);
        } else if (a.preset == "rsr") {
            cfg = presets::rsr_config(a.seed);
            cfg.variant = v;
        } else if (a.preset.rfind("table1-sigma", 0) == 0) {
            cfg = presets::swiss_config(v, a.seed);
        } else if (a.preset == "n8") {
            cfg = presets::oracle_config(a.seed);
            cfg.variant = v;
        } else {
            throw ConfigError("unknown train preset: " + a.preset);
        }
    } else {
        cfg.hidden_widths = parse_arch(a.arch);
        cfg.latent_dim = a.latent;
        cfg.epochs = a.epochs;
    }
    cfg.seed = a.seed;
    if (a.variant_set || !preset_used) cfg.variant = variant_from_name(a.variant);
    if (a.lambda_set || !preset_used) cfg.lambda = a.lambda;
    if (a.epochs_set) cfg.epochs = a.epochs;
    if (a.lr_set) cfg.learning_rate = a.lr;
    if (a.arch_set) cfg.hidden_widths = parse_arch(a.arch);
    if (a.latent_set) cfg.latent_dim = a.latent;
    if (a.batch_set) cfg.batch_size = a.batch;
    if (a.sigma_set) cfg.sigma = a.sigma;
    if (a.normalize_set || !preset_used) cfg.normalize_recon = a.normalize_recon;
    if (cfg.learning_rate == 0.0) cfg.learning_rate = default_learning_rate(n_rows);
    if (cfg.batch_size == 0) cfg.batch_size = default_batch_size(n_rows);
    return cfg;
}

LabeledDataset train_data_from_args(const TrainArgs& a) {
    if (!a.data.empty()) return load_csv_auto(a.data);
    if (a.preset == "fig3") return presets::fig3_data(a.seed).train;
    if (a.preset == "rsr") return presets::rsr_data(a.preset_r, a.seed);
    if (a.preset.rfind("table1-sigma", 0) == 0)
        return presets::swiss_data(std::stod(a.preset.substr(std::string("table1-sigma").size())), a.seed);
    if (a.preset == "n8") {
        presets::OracleInstance inst = presets::oracle_instance(a.seed);
        LabeledDataset ds;
        ds.x = inst.x;
        ds.has_labels = true;
        ds.labels.resize(inst.inlier_mask.size());
        for (std::size_t i = 0; i < ds.labels.size(); ++i) ds.labels[i] = inst.inlier_mask[i] ? 0 : 1;
        return ds;
    }
    throw ConfigError("no --data given and no preset that generates data");
}

} // namespace

int run_train(const TrainArgs& args) {
    LabeledDataset data = train_data_from_args(args);
    ModelFile file;
    if (args.standardize) {
        auto [scaled, params] = standardize(data);
        data = std::move(scaled);
        file.standardize = std::move(params);
    }
    PraeConfig cfg = train_config_from_args(args, data.n());

    auto t0 = std::chrono::steady_clock::now();
    file.model = args.plain_ae ? train_plain_ae(data, cfg) : train_prae(data, cfg);
    auto t1 = std::chrono::steady_clock::now();

    save_model(file, args.model_out);

    RunRecord record;
    record.seed = cfg.seed;
    record.cfg_hash = config_hash(file.model.config);
    record.training_log = file.model.training_log;
    record.wall_clock_sec = std::chrono::duration<double>(t1 - t0).count();
    bool both_classes = false;
    if (data.has_labels) {
        int pos = 0;
        for (auto l : data.labels) pos += l;
        both_classes = pos > 0 && pos < data.n();
    }
    if (both_classes) {
        AnomalyScores s = args.plain_ae ? score_out_of_sample(file.model, data.x)
                                        : score_in_sample(file.model);
        EvalReport report;
        report.auc = roc_auc(s.scores, data.labels);
        MaxF1Result f1 = max_f1(s.scores, data.labels);
        report.max_f1 = f1.f1;
        report.best_threshold = f1.threshold;
        report.precision = f1.precision;
        report.recall = f1.recall;
        record.metrics = report;
    }
    save_run_record(record, args.model_out + ".run.json");

    const std::vector<TrainLogRow>& log = file.model.training_log;
    double final_loss = log.empty() ? 0.0 : log.back().loss;
    int open = log.empty() ? file.model.gates.size() : log.back().open_count;
    std::cout << "trained " << variant_name(file.model.config.variant) << " model: N=" << data.n()
              << " epochs=" << file.model.config.epochs << " final_loss=" << format_double(final_loss)
              << " open_gates=" << open << "/" << data.n() << "\n";
    std::cout << "model written to " << args.model_out << "\n";
    return 0;
}

int run_score(const ScoreArgs& args) {
    ModelFile file = load_model(args.model);
    LabeledDataset data = load_csv_auto(args.data);
    Mat x = file.standardize ? apply_standardize(*file.standardize, data.x) : data.x;

    AnomalyScores s;
    if (args.mode == "in") {
        if (x.rows != file.model.gates.size())
            throw ConfigError("in-sample scores exist only for the " +
                              std::to_string(file.model.gates.size()) +
                              " training rows; this file has " + std::to_string(x.rows) +
                              " rows (use --mode out for new data)");
        s = score_in_sample(file.model);
    } else if (args.mode == "out") {
        s = score_out_of_sample(file.model, x);
    } else {
        throw ConfigError("mode must be 'in' or 'out'");
    }

    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    out << "row_index,score\n";
    for (std::size_t i = 0; i < s.scores.size(); ++i)
        out << i << ',' << format_double(s.scores[i]) << '\n';
    std::cout << "wrote " << s.scores.size() << " scores to " << args.out << "\n";

    if (!args.basis_out.empty()) {
        if (args.mode != "in") throw ConfigError("--basis-out needs --mode in");
        if (args.basis_dim < 1) throw ConfigError("--basis-out needs --basis-dim >= 1");
        std::vector<std::uint8_t> keep = selected_mask(file.model, args.thresh);
        int kept = 0;
        for (std::uint8_t k : keep) kept += k;
        if (kept < args.basis_dim)
            throw ConfigError("only " + std::to_string(kept) + " rows selected at thresh " +
                              std::to_string(args.thresh) + "; cannot span " +
                              std::to_string(args.basis_dim) + " dimensions");
        Mat sel(kept, x.cols);
        int at = 0;
        for (int i = 0; i < x.rows; ++i)
            if (keep[i]) {
                std::copy(x.row(i), x.row(i) + x.cols, sel.row(at));
                ++at;
            }
        save_matrix_csv(linalg::principal_subspace(sel, args.basis_dim), args.basis_out);
        std::cout << "wrote basis of " << kept << " selected rows to " << args.basis_out << "\n";
    }
    return 0;
}

namespace {

std::vector<double> load_scores_csv(const std::string& path) {
    LabeledDataset raw = load_csv(path);
    if (raw.dim() == 2) { // row_index,score
        std::vector<double> out(raw.n());
        for (int i = 0; i < raw.n(); ++i) out[i] = raw.x(i, 1);
        return out;
    }
    if (raw.dim() == 1) {
        std::vector<double> out(raw.n());
        for (int i = 0; i < raw.n(); ++i) out[i] = raw.x(i, 0);
        return out;
    }
    throw ParseError(path + ": expected a score column (row_index,score)");
}

std::vector<std::uint8_t> load_labels_only(const std::string& path) {
    LabeledDataset raw = load_csv(path);
    if (raw.dim() != 1) throw ParseError(path + ": expected a single 0/1 label column");
    std::vector<std::uint8_t> labels(raw.n());
    for (int i = 0; i < raw.n(); ++i) {
        double v = raw.x(i, 0);
        if (v != 0.0 && v != 1.0) throw ParseError(path + ": labels must be 0 or 1");
        labels[i] = v == 1.0 ? 1 : 0;
    }
    return labels;
}

} // namespace

int run_eval(const EvalArgs& args) {
    std::vector<double> scores = load_scores_csv(args.scores);

    std::vector<std::uint8_t> labels;
    if (!args.data_with_labels.empty()) {
        LabeledDataset data = load_csv_auto(args.data_with_labels);
        if (!data.has_labels)
            throw ConfigError(args.data_with_labels + " has no label column; pass --labels instead");
        labels = data.labels;
    } else if (!args.labels.empty()) {
        labels = load_labels_only(args.labels);
    } else {
        throw ConfigError("eval needs --data-with-labels or --labels");
    }
    if (labels.size() != scores.size())
        throw ConfigError("scores (" + std::to_string(scores.size()) + ") and labels (" +
                          std::to_string(labels.size()) + ") differ in length");

    EvalReport report;
    report.auc = roc_auc(scores, labels);
    MaxF1Result f1 = max_f1(scores, labels);
    report.max_f1 = f1.f1;
    report.best_threshold = f1.threshold;
    report.precision = f1.precision;
    report.recall = f1.recall;

    if (!args.basis_true.empty() && !args.basis_est.empty()) {
        SubspaceAngleResult angle =
            subspace_angle(load_matrix_csv(args.basis_true), load_matrix_csv(args.basis_est));
        report.subspace_angle_rad = angle.max_angle;
        report.subspace_log_angle = angle.log10_angle;
    } else if (!args.basis_true.empty() || !args.basis_est.empty()) {
        throw ConfigError("subspace angle needs both --basis-true and --basis-est");
    }

    std::string json = eval_report_to_json(report);
    std::cout << json;
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        if (!out) throw std::runtime_error("cannot write " + args.out);
        out << json;
    }
    return 0;
}

int run_sweep(const SweepArgs& args) {
    LabeledDataset train, val;
    PraeConfig cfg;
    PraeVariant v = variant_from_name(args.variant);
    if (args.preset == "fig3") {
        presets::TrainVal tv = presets::fig3_data(args.seed);
        train = std::move(tv.train);
        val = std::move(tv.val);
        cfg = presets::fig3_config(v, args.seed);
    } else if (args.preset.empty()) {
        if (args.data.empty()) throw ConfigError("sweep needs --data or --preset");
        LabeledDataset all = load_csv_auto(args.data);
        auto [tr, ho] = split(all, args.val_fraction, args.seed);
        train = std::move(tr);
        val = std::move(ho);
        cfg.variant = v;
        cfg.seed = args.seed;
        cfg.hidden_widths = args.arch_set ? parse_arch(args.arch) : std::vector<int>{10, 10, 10, 10, 10};
        if (args.latent > 0) cfg.latent_dim = args.latent;
    } else {
        throw ConfigError("unknown sweep preset: " + args.preset);
    }
    if (args.epochs > 0) cfg.epochs = args.epochs;
    if (args.lr > 0.0) cfg.learning_rate = args.lr;

    std::vector<double> lambdas = parse_lambda_list(args.lambdas);
    double me = estimate_lambda_me(train.x);
    std::cout << "ME = " << format_double(me) << "\n";

    std::vector<SweepRow> rows = lambda_sweep(train, val, lambdas, cfg, args.repeats);

    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    const bool with_f1 = !rows.empty() && rows.front().has_f1;
    out << (with_f1 ? "lambda,repeat,f1,val_mse,me_estimate\n" : "lambda,repeat,val_mse,me_estimate\n");
    for (const SweepRow& row : rows) {
        out << format_double(row.lambda) << ',' << row.repeat << ',';
        if (with_f1) out << format_double(row.f1) << ',';
        out << format_double(row.val_mse) << ',' << format_double(me) << '\n';
    }
    std::cout << "wrote " << rows.size() << " sweep rows to " << args.out << "\n";
    return 0;
}

int run_oracle(const OracleArgs& args) {
    if (args.n > 20) throw ConfigError("oracle enumeration is capped at n = 20");
    int matches = 0;
    double worst_gap = 0.0;
    for (int rep = 0; rep < args.repeats; ++rep) {
        std::uint64_t rep_seed = splitmix64(args.seed + rep);
        presets::OracleInstance inst = presets::oracle_instance(rep_seed, args.n, args.dim, args.intrinsic);
        double lambda = std::isnan(args.lambda) ? inst.lambda : args.lambda;
        EquivalenceReport rep_out = equivalence_check(inst.x, lambda, inst.k,
                                                       presets::oracle_config(rep_seed), args.center,
                                                       args.restarts);
        double gap = rep_out.ld_prae - rep_out.ld_oracle;
        worst_gap = std::max(worst_gap, gap);
        matches += rep_out.match ? 1 : 0;
        int prae_kept = 0, oracle_kept = 0;
        for (std::uint8_t b : rep_out.prae_selected) prae_kept += b;
        for (std::uint8_t b : rep_out.oracle_selected) oracle_kept += b;
        std::cout << "repeat " << rep << ": match=" << (rep_out.match ? "yes" : "no")
                  << " prae_kept=" << prae_kept << " oracle_kept=" << oracle_kept
                  << " L_d(prae)=" << format_double(rep_out.ld_prae)
                  << " L_d(oracle)=" << format_double(rep_out.ld_oracle)
                  << " gap=" << format_double(gap) << "\n";
    }
    std::cout << "match rate: " << matches << "/" << args.repeats
              << "  max L_d gap: " << format_double(worst_gap) << "\n";
    return 0;
}

} // namespace prae::cli
