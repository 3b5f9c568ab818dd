#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "matrix.hpp"
#include "noise.hpp"

namespace hs {

// Symmetric observation matrix with a planted hidden set. Entries with both
// endpoints in the hidden set are Q1 draws, everything else Q0; zero
// diagonal. Regenerating with the same (n, hidden_set, noise, seed) is
// bit-for-bit reproducible.
struct DenseInstance {
    int64_t n = 0;
    std::vector<int32_t> hidden; // sorted
    NoiseSpec noise = NoiseSpec::rademacher_clique();
    uint64_t seed = 0;
    Matrix w;
};

// Uniformly random k-subset of {0,...,n-1}, sorted.
std::vector<int32_t> sample_hidden_set(int64_t n, int64_t k, uint64_t seed);

DenseInstance gen_dense_instance(int64_t n, std::span<const int32_t> hidden,
                                 const NoiseSpec& noise, uint64_t seed);

// A = W / sqrt(n).
Matrix normalize(const DenseInstance& inst);

struct LikelihoodTransform {
    Matrix a;            // [dQ1/dQ0(W_ij) - 1] / sqrt(n)
    double lambda_tilde; // L2 distance between Q0 and Q1
};

// Requires Q1 absolutely continuous w.r.t. Q0 (gaussian-shift, or discrete
// pairs with Q1 support contained in Q0 support). Point-mass Q1 against a
// continuous Q0 is rejected.
LikelihoodTransform likelihood_transform(const DenseInstance& inst, const NoiseSpec& noise);

// The scalar lambda-tilde alone, without touching a matrix.
double lambda_tilde(const NoiseSpec& noise);

} // namespace hs
