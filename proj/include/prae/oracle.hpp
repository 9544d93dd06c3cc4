#pragma once

#include "prae/model.hpp"

#include <cstdint>
#include <vector>

namespace prae {

struct RaeOracleResult {
    std::vector<std::uint8_t> best_b;
    double best_loss = 0.0;
    // (selection mask, loss) for every subset, filled when requested.
    std::vector<std::pair<std::uint32_t, double>> all_subset_losses;
};

// Exact minimizer of L_d(b) = pca_residual(selected rows) − λ·‖b‖₀ over all
// 2^N subsets; the optimal linear AE on a subset is its rank-k PCA fit.
// With center=true residuals are taken about the subset mean, otherwise about
// the origin. Ties resolve to the smaller selection, then the
// lexicographically smallest b. Refuses N > 20.
RaeOracleResult brute_force_rae_linear(const Mat& data, double lambda, int k, bool center = false,
                                       bool keep_table = false);

// L_d of an arbitrary selection under the same residual convention.
double rae_loss(const Mat& data, const std::vector<std::uint8_t>& b, double lambda, int k,
                bool center = false);

struct EquivalenceReport {
    std::vector<std::uint8_t> prae_selected;
    std::vector<std::uint8_t> oracle_selected;
    bool match = false;
    double ld_prae = 0.0;
    double ld_oracle = 0.0;
};

// Trains a linear-AE PRAE on the data, thresholds the gates at 0.1 and
// compares the kept set against the brute-force minimizer. The joint
// objective is nonconvex, so with restarts > 1 several training seeds run and
// the selection with the lowest own L_d wins; the comparison target never
// informs the choice.
EquivalenceReport equivalence_check(const Mat& data, double lambda, int k, const PraeConfig& base_config,
                                    bool center = false, int restarts = 1);

} // namespace prae
