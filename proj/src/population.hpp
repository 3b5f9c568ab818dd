#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graph.hpp"
#include "se.hpp"

namespace hs {

// Monte-Carlo sample pools for the laws of the tree odds ratios gamma^t(0)
// and gamma^t(1), stored in log domain. Pools start constant at kappa.
// Draws are addressed by (seed, t, pool, sample), so steps are reproducible
// for any thread count.
struct TreePopulation {
    int t = 0;
    double kappa = 0.0;
    int32_t delta = 0;
    uint64_t seed = 0;
    std::vector<double> log0;
    std::vector<double> log1;

    double mean0() const; // E[gamma^t(0)] estimate
    double mean1() const;
};

TreePopulation make_population(double kappa, int32_t delta, int64_t pool_size, uint64_t seed);

// One generation: each new sample draws delta triples (x ~ Bern(kt/sqrt(d)),
// A uniform +-1, donor resampled from the matching pool) and multiplies the
// odds factors; the gamma(1) pool forces A = +1 on the x = 1 draws.
void population_step(TreePopulation& pop, int threads = 1);

// Vertex-level pools: the same product over delta+1 factors.
struct VertexPools {
    std::vector<double> log0;
    std::vector<double> log1;
};

VertexPools tree_vertex_distribution(const TreePopulation& pop, int threads = 1);

// Plug-in misclassification of the sqrt(delta) threshold rule:
// (1 - kt/sqrt(d)) P(g(0) >= sqrt(d)) + (kt/sqrt(d)) P(g(1) < sqrt(d)).
double misclassification_estimate(const VertexPools& pools, double kappa, int32_t delta);

// Mid-threshold decision of the Gaussian-limit rule: 1 iff log gamma exceeds
// mu_bar_t strictly.
bool f2_threshold_rule(double log_gamma, const SparseSETrace& trace, int t);

// Monte-Carlo recursion for the counting rule's conditional error rates:
// p_t = P(rule says 1 | root 0), q_t = P(rule says 1 | root 1), starting from
// leaf decisions with symmetric error eps. The rule fires when the signed
// count of marked children reaches (kappa/2) sqrt(delta).
struct PqTrace {
    std::vector<double> p;
    std::vector<double> q;
};

PqTrace local_rule_pq(double kappa, int32_t delta, double eps, int t_rounds, int64_t replicas,
                      uint64_t seed);

// Synchronous counting rule on a labeled graph: bit_i <- 1 iff
// sum_{l in di} W_il bit_l >= (kappa/2) sqrt(delta), for t_rounds rounds.
std::vector<uint8_t> local_majority_refine(const SparseInstance& inst,
                                           std::span<const uint8_t> init_bits, int t_rounds);

// Bottom-up counting rule on an explicit rooted tree (parent[i] < i,
// parent[0] == -1); bits at the leaves come from init, internal nodes are
// decided from their children. Returns the bit at every node.
std::vector<uint8_t> local_majority_refine_tree(std::span<const int32_t> parent,
                                                std::span<const double> edge_weight_to_parent,
                                                std::span<const uint8_t> leaf_bits, double kappa,
                                                int32_t delta);

} // namespace hs
