#include "population.hpp"

#include <cmath>
#include <thread>

#include "bp.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace hs {

namespace {

double pool_mean(const std::vector<double>& logs) {
    double acc = 0.0;
    for (double lg : logs) acc += std::exp(lg);
    return acc / static_cast<double>(logs.size());
}

void run_blocks(int64_t count, int threads, auto&& body) {
    if (threads <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    int64_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        int64_t lo = w * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Stream ids keep (t, pool) lanes disjoint; samples address blocks by index.
uint64_t pool_stream(int t, int which) {
    return streams::population + 2 * static_cast<uint64_t>(t) + which;
}

} // namespace

double TreePopulation::mean0() const { return pool_mean(log0); }
double TreePopulation::mean1() const { return pool_mean(log1); }

TreePopulation make_population(double kappa, int32_t delta, int64_t pool_size, uint64_t seed) {
    require(kappa > 0.0, errc::invalid_argument, "kappa must be positive");
    require(delta >= 2, errc::invalid_argument, "delta must be at least 2");
    require(pool_size >= 1, errc::invalid_argument, "pool must be nonempty");
    TreePopulation pop;
    pop.kappa = kappa;
    pop.delta = delta;
    pop.seed = seed;
    pop.log0.assign(pool_size, std::log(kappa));
    pop.log1.assign(pool_size, std::log(kappa));
    return pop;
}

namespace {

// Shared product body for the edge (count = delta) and vertex
// (count = delta + 1) recursions.
double sample_log_product(const TreePopulation& pop, Rng& rng, int count, bool conditioned_one,
                          uint32_t bern_threshold, double log_sd) {
    double acc = std::log(pop.kappa);
    auto psize = static_cast<uint32_t>(pop.log0.size());
    for (int l = 0; l < count; ++l) {
        bool x = rng.next_u32() < bern_threshold;
        int a = (rng.next_u32() & 1u) ? 1 : -1;
        uint32_t idx = rng.next_below(psize);
        double lg = x ? pop.log1[idx] : pop.log0[idx];
        int w = (conditioned_one && x) ? 1 : a;
        acc += log_bp_factor(lg, w, log_sd);
    }
    return acc;
}

} // namespace

void population_step(TreePopulation& pop, int threads) {
    const auto psize = static_cast<int64_t>(pop.log0.size());
    double p = kappa_tilde(pop.kappa, pop.delta) / std::sqrt(static_cast<double>(pop.delta));
    auto bern = static_cast<uint32_t>(p * 4294967296.0);
    double log_sd = 0.5 * std::log(static_cast<double>(pop.delta));

    std::vector<double> next0(psize), next1(psize);
    // Sample s consumes blocks [s*stride, (s+1)*stride) of its lane.
    uint64_t stride = static_cast<uint64_t>(pop.delta) + 2;
    run_blocks(psize, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t s = lo; s < hi; ++s) {
            Rng rng0(pop.seed, pool_stream(pop.t, 0), static_cast<uint64_t>(s) * stride);
            next0[s] = sample_log_product(pop, rng0, pop.delta, false, bern, log_sd);
            Rng rng1(pop.seed, pool_stream(pop.t, 1), static_cast<uint64_t>(s) * stride);
            next1[s] = sample_log_product(pop, rng1, pop.delta, true, bern, log_sd);
        }
    });
    pop.log0 = std::move(next0);
    pop.log1 = std::move(next1);
    ++pop.t;
}

VertexPools tree_vertex_distribution(const TreePopulation& pop, int threads) {
    const auto psize = static_cast<int64_t>(pop.log0.size());
    double p = kappa_tilde(pop.kappa, pop.delta) / std::sqrt(static_cast<double>(pop.delta));
    auto bern = static_cast<uint32_t>(p * 4294967296.0);
    double log_sd = 0.5 * std::log(static_cast<double>(pop.delta));

    VertexPools out;
    out.log0.resize(psize);
    out.log1.resize(psize);
    uint64_t stride = static_cast<uint64_t>(pop.delta) + 3;
    run_blocks(psize, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t s = lo; s < hi; ++s) {
            Rng rng0(pop.seed, pool_stream(pop.t, 0) | 0x8000, static_cast<uint64_t>(s) * stride);
            out.log0[s] = sample_log_product(pop, rng0, pop.delta + 1, false, bern, log_sd);
            Rng rng1(pop.seed, pool_stream(pop.t, 1) | 0x8000, static_cast<uint64_t>(s) * stride);
            out.log1[s] = sample_log_product(pop, rng1, pop.delta + 1, true, bern, log_sd);
        }
    });
    return out;
}

double misclassification_estimate(const VertexPools& pools, double kappa, int32_t delta) {
    require(!pools.log0.empty() && !pools.log1.empty(), errc::invalid_argument, "empty pools");
    double thr = 0.5 * std::log(static_cast<double>(delta));
    double false_pos = 0.0, false_neg = 0.0;
    for (double lg : pools.log0)
        if (lg >= thr) false_pos += 1.0;
    for (double lg : pools.log1)
        if (lg < thr) false_neg += 1.0;
    false_pos /= static_cast<double>(pools.log0.size());
    false_neg /= static_cast<double>(pools.log1.size());
    double pi = kappa_tilde(kappa, delta) / std::sqrt(static_cast<double>(delta));
    return (1.0 - pi) * false_pos + pi * false_neg;
}

bool f2_threshold_rule(double log_gamma, const SparseSETrace& trace, int t) {
    require(t >= 0 && t < static_cast<int>(trace.mu_bar.size()), errc::invalid_argument,
            "t outside the trace range");
    return log_gamma > trace.mu_bar[t];
}

namespace {

// Exact inversion sampler for Binomial(n, p); pmf walk from k = 0.
int64_t binomial_draw(Rng& rng, int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    double u = rng.next_unit();
    double logq = std::log1p(-p);
    double pmf = std::exp(n * logq);
    double ratio = p / (1.0 - p);
    double acc = pmf;
    int64_t k = 0;
    while (u > acc && k < n) {
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
        acc += pmf;
    }
    return k;
}

// Sum of n independent uniform signs.
int64_t signed_count_draw(Rng& rng, int64_t n) {
    return 2 * binomial_draw(rng, n, 0.5) - n;
}

} // namespace

PqTrace local_rule_pq(double kappa, int32_t delta, double eps, int t_rounds, int64_t replicas,
                      uint64_t seed) {
    require(eps >= 0.0 && eps <= 1.0, errc::invalid_argument, "eps must be a probability");
    require(replicas >= 1, errc::invalid_argument, "need at least one replica");
    PqTrace tr;
    tr.p.push_back(eps);
    tr.q.push_back(1.0 - eps);
    double pi = kappa_tilde(kappa, delta) / std::sqrt(static_cast<double>(delta));
    double threshold = kappa * std::sqrt(static_cast<double>(delta)) / 2.0;
    for (int t = 0; t < t_rounds; ++t) {
        double pt = tr.p.back(), qt = tr.q.back();
        int64_t fire0 = 0, fire1 = 0;
        Rng rng(seed, streams::local_rule + t);
        for (int64_t r = 0; r < replicas; ++r) {
            int64_t d = binomial_draw(rng, delta, pi);
            int64_t m = binomial_draw(rng, d, qt);
            int64_t nn = binomial_draw(rng, delta - d, pt);
            // root 0: every marked child contributes a fresh sign
            if (static_cast<double>(signed_count_draw(rng, m + nn)) >= threshold) ++fire0;
            // root 1: hidden marked children contribute +1 deterministically
            if (static_cast<double>(signed_count_draw(rng, nn) + m) >= threshold) ++fire1;
        }
        tr.p.push_back(static_cast<double>(fire0) / static_cast<double>(replicas));
        tr.q.push_back(static_cast<double>(fire1) / static_cast<double>(replicas));
    }
    return tr;
}

std::vector<uint8_t> local_majority_refine(const SparseInstance& inst,
                                           std::span<const uint8_t> init_bits, int t_rounds) {
    require(inst.noise.two_point(), errc::unsupported,
            "counting rule requires the two-point noise model");
    require(static_cast<int32_t>(init_bits.size()) == inst.n, errc::invalid_argument,
            "bit vector size mismatch");
    double threshold = inst.kappa * std::sqrt(static_cast<double>(inst.delta)) / 2.0;
    std::vector<uint8_t> bits(init_bits.begin(), init_bits.end());
    std::vector<uint8_t> next(bits.size());
    const RegularGraph& g = inst.graph;
    for (int t = 0; t < t_rounds; ++t) {
        for (int32_t i = 0; i < inst.n; ++i) {
            double acc = 0.0;
            for (int32_t k = g.adj_offset[i]; k < g.adj_offset[i + 1]; ++k)
                if (bits[g.adj_vertex[k]]) acc += inst.weights[g.adj_edge[k]];
            next[i] = acc >= threshold ? 1 : 0;
        }
        bits.swap(next);
    }
    return bits;
}

std::vector<uint8_t> local_majority_refine_tree(std::span<const int32_t> parent,
                                                std::span<const double> edge_weight_to_parent,
                                                std::span<const uint8_t> leaf_bits, double kappa,
                                                int32_t delta) {
    size_t n = parent.size();
    require(edge_weight_to_parent.size() == n && leaf_bits.size() == n, errc::invalid_argument,
            "tree arrays must align");
    std::vector<int32_t> child_count(n, 0);
    for (size_t i = 1; i < n; ++i) {
        require(parent[i] >= 0 && parent[i] < static_cast<int32_t>(i), errc::invalid_argument,
                "parents must precede children");
        ++child_count[parent[i]];
    }
    double threshold = kappa * std::sqrt(static_cast<double>(delta)) / 2.0;
    std::vector<double> acc(n, 0.0);
    std::vector<uint8_t> bits(leaf_bits.begin(), leaf_bits.end());
    for (size_t i = n; i-- > 1;) {
        if (child_count[i] > 0) bits[i] = acc[i] >= threshold ? 1 : 0;
        if (bits[i]) acc[parent[i]] += edge_weight_to_parent[i];
    }
    if (!child_count.empty() && child_count[0] > 0) bits[0] = acc[0] >= threshold ? 1 : 0;
    return bits;
}

} // namespace hs
