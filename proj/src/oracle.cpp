#include "prae/oracle.hpp"

#include "prae/linalg.hpp"

#include <bit>

namespace prae {

namespace {

Mat select_rows(const Mat& data, std::uint32_t mask) {
    Mat sub(std::popcount(mask), data.cols);
    int at = 0;
    for (int i = 0; i < data.rows; ++i)
        if (mask & (1u << i)) {
            std::copy(data.row(i), data.row(i) + data.cols, sub.row(at));
            ++at;
        }
    return sub;
}

double subset_loss(const Mat& data, std::uint32_t mask, double lambda, int k, bool center) {
    const int count = std::popcount(mask);
    if (count == 0) return 0.0;
    return linalg::pca_residual(select_rows(data, mask), k, center) - lambda * count;
}

// Element order, false before true.
bool lex_less(std::uint32_t a, std::uint32_t b, int n) {
    for (int i = 0; i < n; ++i) {
        bool ai = a & (1u << i), bi = b & (1u << i);
        if (ai != bi) return !ai;
    }
    return false;
}

std::vector<std::uint8_t> mask_to_vec(std::uint32_t mask, int n) {
    std::vector<std::uint8_t> b(n);
    for (int i = 0; i < n; ++i) b[i] = (mask >> i) & 1u;
    return b;
}

} // namespace

double rae_loss(const Mat& data, const std::vector<std::uint8_t>& b, double lambda, int k, bool center) {
    require_shape(static_cast<int>(b.size()) == data.rows, "rae_loss: selection length mismatch");
    std::uint32_t mask = 0;
    for (int i = 0; i < data.rows; ++i)
        if (b[i]) mask |= 1u << i;
    return subset_loss(data, mask, lambda, k, center);
}

RaeOracleResult brute_force_rae_linear(const Mat& data, double lambda, int k, bool center,
                                       bool keep_table) {
    const int n = data.rows;
    if (n > 20)
        throw ConfigError("brute_force_rae_linear: refusing N = " + std::to_string(n) +
                          " (enumeration is capped at 20 samples)");
    if (n < 1) throw ConfigError("brute_force_rae_linear: empty data");
    if (k < 1 || k >= data.cols)
        throw ConfigError("brute_force_rae_linear: need 1 <= k < data dimension");

    RaeOracleResult result;
    std::uint32_t best_mask = 0;
    double best_loss = 0.0; // empty selection
    if (keep_table) result.all_subset_losses.reserve(std::size_t{1} << n);

    const std::uint32_t total = 1u << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        double loss = subset_loss(data, mask, lambda, k, center);
        if (keep_table) result.all_subset_losses.emplace_back(mask, loss);
        if (mask == 0) continue;
        bool better = loss < best_loss;
        if (!better && loss == best_loss) {
            int c = std::popcount(mask), bc = std::popcount(best_mask);
            better = c < bc || (c == bc && lex_less(mask, best_mask, n));
        }
        if (better) {
            best_loss = loss;
            best_mask = mask;
        }
    }
    result.best_b = mask_to_vec(best_mask, n);
    result.best_loss = best_loss;
    return result;
}

EquivalenceReport equivalence_check(const Mat& data, double lambda, int k, const PraeConfig& base_config,
                                    bool center, int restarts) {
    PraeConfig cfg = base_config;
    cfg.lambda = lambda;
    cfg.latent_dim = k;
    cfg.activation = Activation::Linear;
    cfg.hidden_widths.clear();

    LabeledDataset ds;
    ds.x = data;

    EquivalenceReport report;
    for (int t = 0; t < std::max(1, restarts); ++t) {
        PraeConfig run_cfg = cfg;
        run_cfg.seed = t == 0 ? cfg.seed : splitmix64(splitmix64(cfg.seed) + t);
        PraeModel model = train_prae(ds, run_cfg);
        std::vector<std::uint8_t> selected = selected_mask(model, 0.1);
        double ld = rae_loss(data, selected, lambda, k, center);
        if (t == 0 || ld < report.ld_prae) {
            report.ld_prae = ld;
            report.prae_selected = std::move(selected);
        }
    }

    RaeOracleResult oracle = brute_force_rae_linear(data, lambda, k, center);
    report.oracle_selected = oracle.best_b;
    report.ld_oracle = oracle.best_loss;
    report.match = report.prae_selected == report.oracle_selected;
    return report;
}

} // namespace prae
