#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noise.hpp"

namespace hs {

// Simple regular graph in CSR form. edges holds each undirected edge once
// with a < b; adjacency lists store (neighbor, edge id).
struct RegularGraph {
    int32_t n = 0;
    int32_t degree = 0;
    std::vector<std::pair<int32_t, int32_t>> edges;
    std::vector<int32_t> adj_offset;  // n+1
    std::vector<int32_t> adj_vertex;  // n*degree
    std::vector<int32_t> adj_edge;    // n*degree

    void build_adjacency();
};

// Random simple regular graph by stub pairing with redraw on collisions and
// full restart on dead ends (Steger-Wormald style).
RegularGraph gen_regular_graph(int32_t n, int32_t degree, uint64_t seed);

// Fraction of vertices whose radius-t ball induces a tree (BFS check).
double tree_ball_fraction(const RegularGraph& g, int radius);

enum class SamplingMode : uint32_t { iid = 0, fixed_size = 1 };

// (delta+1)-regular graph with vertex labels and per-edge weights. Labels are
// Bernoulli(kt/sqrt(delta)) with kt = kappa/(1+kappa/sqrt(delta)) in iid
// mode, or exactly round(n*kt/sqrt(delta)) ones in fixed-size mode. Weights
// are Q1 draws iff both endpoints are labeled.
struct SparseInstance {
    int32_t n = 0;
    int32_t delta = 0;
    RegularGraph graph;
    std::vector<uint8_t> labels;
    std::vector<double> weights; // per edge, same order as graph.edges
    double kappa = 0.0;
    SamplingMode mode = SamplingMode::iid;
    NoiseSpec noise = NoiseSpec::rademacher_clique();
    uint64_t seed = 0;

    std::vector<int32_t> hidden_set() const;
};

double kappa_tilde(double kappa, int32_t delta);

SparseInstance gen_sparse_instance(int32_t n, int32_t delta, double kappa, const NoiseSpec& noise,
                                   SamplingMode mode, uint64_t seed);

} // namespace hs
