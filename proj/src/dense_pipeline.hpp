#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dense_instance.hpp"
#include "matrix.hpp"
#include "se.hpp"

namespace hs {

std::vector<int32_t> threshold_candidates(std::span<const double> vertex_values,
                                          double mu_hat_tstar);

struct PowerResult {
    std::vector<double> vec; // unit norm
    bool rank_degenerate = false;
};

// Plain power iteration from the normalized all-ones vector; converges to the
// dominant-|eigenvalue| direction. A zero image returns the current iterate
// with the rank_degenerate flag set.
PowerResult power_method(const Matrix& m, int iterations);

// Indices of the k largest entries by absolute value; ties break toward the
// smaller index. Output sorted ascending.
std::vector<int32_t> top_k_abs(std::span<const double> values, int64_t k);

// Truncated scores zeta(i) = (1/|B|) sum_{j in B, j != i} W_ij 1{|W_ij| <= rho_bar}.
std::vector<double> scores(const Matrix& w, std::span<const int32_t> b, double rho_bar);

// Smallest truncation level rho_bar for the noise family: for bounded
// families the support bound; for gaussian-shift the smallest value whose
// truncated Q1 mean is >= 7 lambda / 8 (the truncated Q0 mean is 0 by
// symmetry), found by bisection.
double default_rho_bar(const NoiseSpec& noise);

struct StageStats {
    int t_star = 0;
    int64_t candidate_size = 0;
    int64_t candidate_truth = 0; // |candidate ∩ hidden|
    int64_t eigen_size = 0;
    int64_t eigen_truth = 0;
    int64_t final_size = 0;
    int64_t final_truth = 0;
    int64_t ms_mp = 0;
    int64_t ms_clean = 0;
    bool aborted = false; // candidate stage too small to continue
};

struct RecoveryResult {
    std::vector<int32_t> candidate_set;
    std::vector<int32_t> eigen_set;
    std::vector<int32_t> final_set;
    StageStats stats;
    bool success = false; // final_set == hidden set exactly
};

// Full pipeline: normalize, t_star message-passing rounds with the schedule
// polynomials, threshold at mu_hat_{t_star}/2, power method on the candidate
// submatrix, top-k by |entry|, truncated-score selection at lambda/2.
// t_power < 0 picks ceil(10 ln n); rho_bar <= 0 picks default_rho_bar.
RecoveryResult run_algorithm1(const DenseInstance& inst, int64_t k,
                              const PolynomialSchedule& schedule, int t_power = -1,
                              double rho_bar = -1.0, int threads = 1);

struct SpectralResult {
    std::vector<int32_t> set;
    double truth_overlap_fraction = 0.0; // |set ∩ hidden| / |hidden|
    double eigvec_overlap = 0.0;         // |<v1, u_hidden / n^(1/4)>|
};

// Baseline: power iteration on the full matrix (shifted by +3I so the
// algebraically largest eigenvector dominates), then top-k of |v1|.
SpectralResult spectral_solve(const Matrix& a, int64_t k, int iterations,
                              std::span<const int32_t> truth = {});

} // namespace hs
