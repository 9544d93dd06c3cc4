#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prae::cli {

struct SynthArgs {
    std::string kind; // "linear" or "swiss"
    std::string preset;
    int n = 200;
    int dim = 100;
    int intrinsic = 2;
    int outliers = 50;
    double noise_var = 1e-8;
    double r = -1.0; // outlier fraction; overrides --outliers when set
    int n_in = 1000;
    int n_out = 200;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string basis_out;
};

struct TrainArgs {
    std::string data;
    std::string preset;
    std::string variant = "l1";
    bool variant_set = false;
    double lambda = 1.0;
    bool lambda_set = false;
    int epochs = 500;
    bool epochs_set = false;
    double lr = 0.0;
    bool lr_set = false;
    std::string arch = "10,10,10,10,10";
    bool arch_set = false;
    int latent = 1;
    bool latent_set = false;
    int batch = 0;
    bool batch_set = false;
    double sigma = 0.5;
    bool sigma_set = false;
    bool normalize_recon = false;
    bool normalize_set = false;
    bool standardize = false;
    bool plain_ae = false;
    double preset_r = 0.5; // outlier fraction for the rsr preset generator
    std::uint64_t seed = 0;
    std::string model_out;
};

struct ScoreArgs {
    std::string model;
    std::string data;
    std::string mode = "out"; // "in" or "out"
    std::string out;
    std::string basis_out;
    int basis_dim = 0;
    double thresh = 0.1;
};

struct EvalArgs {
    std::string scores;
    std::string data_with_labels;
    std::string labels;
    std::string basis_true;
    std::string basis_est;
    std::string out;
};

struct SweepArgs {
    std::string data;
    std::string preset;
    std::string lambdas = "0.1,0.25,0.5,1,2,5,10";
    double val_fraction = 0.5;
    int repeats = 1;
    std::string variant = "l1";
    int epochs = 0; // 0 → preset/config default
    double lr = 0.0;
    std::string arch;
    bool arch_set = false;
    int latent = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct OracleArgs {
    int n = 8;
    int dim = 3;
    int intrinsic = 1;
    double lambda = 1.0;
    std::uint64_t seed = 0;
    int repeats = 10;
    int restarts = 3;
    bool center = false;
};

int run_synth(const SynthArgs& args);
int run_train(const TrainArgs& args);
int run_score(const ScoreArgs& args);
int run_eval(const EvalArgs& args);
int run_sweep(const SweepArgs& args);
int run_oracle(const OracleArgs& args);

// Shared helpers (also used by tests and the acceptance suite).
std::vector<int> parse_arch(const std::string& arch);
std::vector<double> parse_lambda_list(const std::string& list);

} // namespace prae::cli
