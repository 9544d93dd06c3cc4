#include "prae/cli_actions.hpp"
#include "prae/kernels.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::uint64_t default_seed() {
    const char* env = std::getenv("PRAE_SEED");
    return env ? std::strtoull(env, nullptr, 10) : 0ULL;
}

} // namespace

int main(int argc, char** argv) {
    prae::kernels::set_mode_from_env();

    CLI::App app{"prae: probabilistic robust autoencoder for unsupervised anomaly detection"};
    app.require_subcommand(1);
    const std::uint64_t seed0 = default_seed();

    using namespace prae::cli;
    SynthArgs synth;
    synth.seed = seed0;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    synth_cmd->add_option("kind", synth.kind, "linear or swiss")->check(CLI::IsMember({"linear", "swiss"}));
    synth_cmd->add_option("--preset", synth.preset, "fig3 | rsr | table1-sigma{0.1,1,10}");
    synth_cmd->add_option("--n", synth.n, "total rows (linear)");
    synth_cmd->add_option("--dim", synth.dim, "ambient dimension (linear)");
    synth_cmd->add_option("--intrinsic", synth.intrinsic, "subspace dimension (linear)");
    synth_cmd->add_option("--outliers", synth.outliers, "outlier count (linear)");
    synth_cmd->add_option("--r", synth.r, "outlier fraction (linear, overrides --outliers)");
    synth_cmd->add_option("--noise", synth.noise_var, "additive gaussian noise variance (linear)");
    synth_cmd->add_option("--n-in", synth.n_in, "inlier count (swiss)");
    synth_cmd->add_option("--n-out", synth.n_out, "outlier count (swiss)");
    synth_cmd->add_option("--sigma2", synth.sigma2, "outlier variance (swiss)");
    synth_cmd->add_option("--seed", synth.seed, "rng seed");
    synth_cmd->add_option("--out", synth.out, "output CSV path")->required();
    synth_cmd->add_option("--basis-out", synth.basis_out, "write the true basis CSV (linear)");
    synth_cmd->callback([&] {
        if (synth.kind.empty() && synth.preset.empty())
            throw CLI::ValidationError("synth", "give a kind (linear|swiss) or --preset");
    });

    TrainArgs train;
    train.seed = seed0;
    CLI::App* train_cmd = app.add_subcommand("train", "train a PRAE model");
    train_cmd->add_option("--data", train.data, "training CSV (label column is stripped if present)");
    train_cmd->add_option("--preset", train.preset, "fig3 | rsr | table1-sigma{0.1,1,10} | n8");
    auto* o_variant = train_cmd->add_option("--variant", train.variant, "l0 or l1")
                          ->check(CLI::IsMember({"l0", "l1"}));
    auto* o_lambda = train_cmd->add_option("--lambda", train.lambda, "regularization strength");
    auto* o_epochs = train_cmd->add_option("--epochs", train.epochs, "training epochs");
    auto* o_lr = train_cmd->add_option("--lr", train.lr, "learning rate (default N*1e-6)");
    auto* o_arch = train_cmd->add_option("--arch", train.arch, "hidden widths, e.g. 10,10,10,10,10 or none");
    auto* o_latent = train_cmd->add_option("--latent", train.latent, "latent dimension");
    auto* o_batch = train_cmd->add_option("--batch", train.batch, "mini-batch size (default min(N,256))");
    auto* o_sigma = train_cmd->add_option("--sigma", train.sigma, "gate noise scale");
    auto* o_norm = train_cmd->add_flag("--normalize-recon", train.normalize_recon,
                                       "divide each sample's error by its squared norm");
    train_cmd->add_option("--r", train.preset_r, "outlier fraction for --preset rsr");
    train_cmd->add_flag("--standardize", train.standardize, "z-score columns before training");
    train_cmd->add_flag("--plain-ae", train.plain_ae, "ablation: plain autoencoder, gates pinned open");
    train_cmd->add_option("--seed", train.seed, "rng seed");
    train_cmd->add_option("--model-out", train.model_out, "output model JSON")->required();

    ScoreArgs score;
    CLI::App* score_cmd = app.add_subcommand("score", "score rows with a trained model");
    score_cmd->add_option("--model", score.model, "model JSON")->required();
    score_cmd->add_option("--data", score.data, "CSV to score")->required();
    score_cmd->add_option("--mode", score.mode, "in (training gates) or out (reconstruction error)")
        ->check(CLI::IsMember({"in", "out"}));
    score_cmd->add_option("--out", score.out, "output scores CSV")->required();
    score_cmd->add_option("--basis-out", score.basis_out, "write selected-inlier subspace basis (mode in)");
    score_cmd->add_option("--basis-dim", score.basis_dim, "basis dimension for --basis-out");
    score_cmd->add_option("--thresh", score.thresh, "selection threshold for --basis-out");

    EvalArgs eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate scores against labels");
    eval_cmd->add_option("--scores", eval.scores, "scores CSV from `score`")->required();
    eval_cmd->add_option("--data-with-labels", eval.data_with_labels, "CSV with a label column");
    eval_cmd->add_option("--labels", eval.labels, "CSV with a single 0/1 column");
    eval_cmd->add_option("--basis-true", eval.basis_true, "true basis CSV");
    eval_cmd->add_option("--basis-est", eval.basis_est, "estimated basis CSV");
    eval_cmd->add_option("--out", eval.out, "also write the report JSON here");

    SweepArgs sweep;
    sweep.seed = seed0;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "train across a lambda grid, report F1/val MSE");
    sweep_cmd->add_option("--data", sweep.data, "CSV to split into train/val");
    sweep_cmd->add_option("--preset", sweep.preset, "fig3");
    sweep_cmd->add_option("--lambdas", sweep.lambdas, "comma-separated lambda grid");
    sweep_cmd->add_option("--val-fraction", sweep.val_fraction, "holdout fraction for --data");
    sweep_cmd->add_option("--repeats", sweep.repeats, "runs per lambda");
    sweep_cmd->add_option("--variant", sweep.variant, "l0 or l1")->check(CLI::IsMember({"l0", "l1"}));
    sweep_cmd->add_option("--epochs", sweep.epochs, "override epochs");
    sweep_cmd->add_option("--lr", sweep.lr, "override learning rate");
    auto* o_sweep_arch = sweep_cmd->add_option("--arch", sweep.arch, "hidden widths for --data runs");
    sweep_cmd->add_option("--latent", sweep.latent, "latent dimension for --data runs");
    sweep_cmd->add_option("--seed", sweep.seed, "rng seed");
    sweep_cmd->add_option("--out", sweep.out, "output table CSV")->required();

    OracleArgs oracle;
    oracle.seed = seed0;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "PRAE vs brute-force RAE equivalence check");
    oracle_cmd->add_option("--n", oracle.n, "rows (max 20)");
    oracle_cmd->add_option("--dim", oracle.dim, "ambient dimension");
    oracle_cmd->add_option("--intrinsic", oracle.intrinsic, "subspace dimension k");
    oracle_cmd->add_option("--lambda", oracle.lambda, "regularization strength");
    oracle_cmd->add_option("--seed", oracle.seed, "rng seed");
    oracle_cmd->add_option("--repeats", oracle.repeats, "number of repeats");
    oracle_cmd->add_option("--restarts", oracle.restarts, "training restarts per repeat (best loss wins)");
    oracle_cmd->add_flag("--center", oracle.center, "fit oracle subspaces about the subset mean");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    train.variant_set = o_variant->count() > 0;
    train.lambda_set = o_lambda->count() > 0;
    train.epochs_set = o_epochs->count() > 0;
    train.lr_set = o_lr->count() > 0;
    train.arch_set = o_arch->count() > 0;
    train.latent_set = o_latent->count() > 0;
    train.batch_set = o_batch->count() > 0;
    train.sigma_set = o_sigma->count() > 0;
    train.normalize_set = o_norm->count() > 0;
    sweep.arch_set = o_sweep_arch->count() > 0;

    try {
        if (synth_cmd->parsed()) return run_synth(synth);
        if (train_cmd->parsed()) return run_train(train);
        if (score_cmd->parsed()) return run_score(score);
        if (eval_cmd->parsed()) return run_eval(eval);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
        if (oracle_cmd->parsed()) return run_oracle(oracle);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
