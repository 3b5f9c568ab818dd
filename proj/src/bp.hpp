#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace hs {

// One multiplicative factor of the odds-ratio recursion, in log domain:
// log[(1 + (1+w) g / sqrt_d) / (1 + g / sqrt_d)] with g = exp(log_gamma).
// w is +1 or -1. Stable for arbitrarily large log_gamma.
inline double log_bp_factor(double log_gamma, int w, double log_sqrt_delta) {
    double lu = log_gamma - log_sqrt_delta; // log(gamma / sqrt(delta))
    if (w > 0) {
        if (lu > 36.0) return std::numbers::ln2_v<double> - 0.5 * std::exp(-lu);
        double u = std::exp(lu);
        return std::log1p(2.0 * u) - std::log1p(u);
    }
    if (lu > 36.0) return -lu - std::exp(-lu);
    return -std::log1p(std::exp(lu));
}

// Directed odds-ratio messages gamma_{i->j} on a labeled regular graph, kept
// in log domain. Message slots are indexed 2e (a->b) and 2e+1 (b->a) for
// edge e = (a,b).
struct BPState {
    int t = 0;
    std::vector<double> log_msg;    // 2 * |E|
    std::vector<double> log_vertex; // n; valid once t >= 1
    bool vertex_valid = false;
};

// All messages start at gamma = 1.
BPState bp_init(const RegularGraph& g);

// One synchronous round of
//   gamma_{i->j} <- kappa * prod_{l in di\j} factor(W_il, gamma_{l->i})
// with vertex values over the full neighborhood. Requires the two-point
// noise model (weights in {+1,-1} with Q1 a point mass at +1).
void bp_iterate(BPState& st, const SparseInstance& inst);

// {i : gamma_i >= sqrt(delta)}, sorted.
std::vector<int32_t> bp_estimate(const BPState& st, int32_t delta);

} // namespace hs
