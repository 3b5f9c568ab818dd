#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dense_instance.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace hs {

void RegularGraph::build_adjacency() {
    adj_offset.assign(n + 1, 0);
    for (auto [a, b] : edges) {
        ++adj_offset[a + 1];
        ++adj_offset[b + 1];
    }
    for (int32_t i = 0; i < n; ++i) adj_offset[i + 1] += adj_offset[i];
    adj_vertex.assign(edges.size() * 2, 0);
    adj_edge.assign(edges.size() * 2, 0);
    std::vector<int32_t> cursor(adj_offset.begin(), adj_offset.end() - 1);
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        adj_vertex[cursor[a]] = b;
        adj_edge[cursor[a]++] = static_cast<int32_t>(e);
        adj_vertex[cursor[b]] = a;
        adj_edge[cursor[b]++] = static_cast<int32_t>(e);
    }
}

RegularGraph gen_regular_graph(int32_t n, int32_t degree, uint64_t seed) {
    require(n >= 1 && degree >= 0, errc::invalid_argument, "bad graph size");
    require(degree < n, errc::invalid_argument, "degree must be smaller than n");
    require((static_cast<int64_t>(n) * degree) % 2 == 0, errc::invalid_argument,
            "n*degree must be even");

    RegularGraph g;
    g.n = n;
    g.degree = degree;
    if (degree == 0) {
        g.build_adjacency();
        return g;
    }

    const int64_t stub_count = static_cast<int64_t>(n) * degree;
    std::vector<int32_t> stubs(stub_count);
    std::vector<std::vector<int32_t>> adj(n);

    Rng rng(seed, streams::graph_pairing);
    for (int attempt = 0;; ++attempt) {
        require(attempt < 1000, errc::internal, "regular graph generation failed to converge");
        for (int64_t i = 0; i < stub_count; ++i) stubs[i] = static_cast<int32_t>(i / degree);
        for (auto& a : adj) a.clear();
        g.edges.clear();

        int64_t remaining = stub_count;
        bool dead_end = false;
        while (remaining > 0) {
            // Redraw until a valid pair comes up; bail to a full restart when
            // the remaining stubs plausibly admit no simple pairing.
            bool paired = false;
            for (int tries = 0; tries < 200; ++tries) {
                int64_t x = rng.next_below(static_cast<uint32_t>(remaining));
                int64_t y = rng.next_below(static_cast<uint32_t>(remaining));
                if (x == y) continue;
                int32_t u = stubs[x], v = stubs[y];
                if (u == v) continue;
                if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) continue;
                adj[u].push_back(v);
                adj[v].push_back(u);
                g.edges.emplace_back(std::min(u, v), std::max(u, v));
                if (x > y) std::swap(x, y);
                stubs[y] = stubs[remaining - 1];
                stubs[x] = stubs[remaining - 2];
                remaining -= 2;
                paired = true;
                break;
            }
            if (!paired) {
                dead_end = true;
                break;
            }
        }
        if (!dead_end) break;
    }

    std::sort(g.edges.begin(), g.edges.end());
    g.build_adjacency();
    return g;
}

double tree_ball_fraction(const RegularGraph& g, int radius) {
    if (g.n == 0) return 1.0;
    std::vector<int32_t> dist(g.n, -1);
    std::vector<int32_t> order;
    order.reserve(256);
    int64_t tree_count = 0;
    for (int32_t root = 0; root < g.n; ++root) {
        order.clear();
        order.push_back(root);
        dist[root] = 0;
        size_t head = 0;
        while (head < order.size()) {
            int32_t u = order[head++];
            if (dist[u] == radius) continue;
            for (int32_t k = g.adj_offset[u]; k < g.adj_offset[u + 1]; ++k) {
                int32_t v = g.adj_vertex[k];
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
            }
        }
        // The ball is connected by construction, so it is a tree iff the
        // induced edge count is |ball| - 1.
        int64_t ball_edges = 0;
        for (int32_t u : order)
            for (int32_t k = g.adj_offset[u]; k < g.adj_offset[u + 1]; ++k)
                if (dist[g.adj_vertex[k]] >= 0 && g.adj_vertex[k] > u) ++ball_edges;
        if (ball_edges == static_cast<int64_t>(order.size()) - 1) ++tree_count;
        for (int32_t u : order) dist[u] = -1;
    }
    return static_cast<double>(tree_count) / g.n;
}

double kappa_tilde(double kappa, int32_t delta) {
    return kappa / (1.0 + kappa / std::sqrt(static_cast<double>(delta)));
}

std::vector<int32_t> SparseInstance::hidden_set() const {
    std::vector<int32_t> out;
    for (int32_t i = 0; i < n; ++i)
        if (labels[i]) out.push_back(i);
    return out;
}

SparseInstance gen_sparse_instance(int32_t n, int32_t delta, double kappa, const NoiseSpec& noise,
                                   SamplingMode mode, uint64_t seed) {
    require(delta >= 2, errc::invalid_argument, "delta must be at least 2");
    require(kappa > 0.0, errc::invalid_argument, "kappa must be positive");
    SparseInstance inst;
    inst.n = n;
    inst.delta = delta;
    inst.kappa = kappa;
    inst.mode = mode;
    inst.noise = noise;
    inst.seed = seed;
    inst.graph = gen_regular_graph(n, delta + 1, seed);

    double p = kappa_tilde(kappa, delta) / std::sqrt(static_cast<double>(delta));
    inst.labels.assign(n, 0);
    if (mode == SamplingMode::iid) {
        for (int32_t i = 0; i < n; ++i)
            inst.labels[i] = block_unit(seed, streams::sparse_labels, i, 0) <= p ? 1 : 0;
    } else {
        auto k = static_cast<int64_t>(std::llround(n * p));
        for (int32_t i : sample_hidden_set(n, k, derive_seed(seed, streams::sparse_labels)))
            inst.labels[i] = 1;
    }

    inst.weights.resize(inst.graph.edges.size());
    for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
        auto [a, b] = inst.graph.edges[e];
        inst.weights[e] = (inst.labels[a] && inst.labels[b])
                              ? noise.sample_q1(seed, streams::sparse_weights, e)
                              : noise.sample_q0(seed, streams::sparse_weights, e);
    }
    return inst;
}

} // namespace hs
