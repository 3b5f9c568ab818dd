#include "dense_instance.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace hs {

std::vector<int32_t> sample_hidden_set(int64_t n, int64_t k, uint64_t seed) {
    require(n >= 0, errc::invalid_argument, "n must be nonnegative");
    require(k >= 0 && k <= n, errc::invalid_argument, "hidden set size out of range");
    std::vector<int32_t> pool(n);
    for (int64_t i = 0; i < n; ++i) pool[i] = static_cast<int32_t>(i);
    Rng rng(seed, streams::hidden_set);
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    for (int64_t i = 0; i < k; ++i) {
        int64_t j = i + rng.next_below(static_cast<uint32_t>(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int32_t> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

DenseInstance gen_dense_instance(int64_t n, std::span<const int32_t> hidden,
                                 const NoiseSpec& noise, uint64_t seed) {
    require(n >= 0, errc::invalid_argument, "n must be nonnegative");
    DenseInstance inst;
    inst.n = n;
    inst.hidden.assign(hidden.begin(), hidden.end());
    std::sort(inst.hidden.begin(), inst.hidden.end());
    for (int32_t i : inst.hidden)
        require(i >= 0 && i < n, errc::invalid_argument, "hidden index out of range");
    inst.noise = noise;
    inst.seed = seed;
    inst.w = Matrix(n);

    std::vector<uint8_t> in_set(n, 0);
    for (int32_t i : inst.hidden) in_set[i] = 1;

    // Each unordered pair (i<j) is addressed by its upper-triangle rank, so
    // the matrix regenerates entry-by-entry from (seed, pair index).
    uint64_t pair_index = 0;
    for (int64_t i = 0; i < n; ++i) {
        for (int64_t j = i + 1; j < n; ++j, ++pair_index) {
            double x = (in_set[i] && in_set[j])
                           ? noise.sample_q1(seed, streams::dense_entries, pair_index)
                           : noise.sample_q0(seed, streams::dense_entries, pair_index);
            inst.w(i, j) = x;
            inst.w(j, i) = x;
        }
    }
    return inst;
}

Matrix normalize(const DenseInstance& inst) {
    Matrix a(inst.n);
    double s = inst.n > 0 ? 1.0 / std::sqrt(static_cast<double>(inst.n)) : 0.0;
    for (size_t idx = 0; idx < inst.w.v.size(); ++idx) a.v[idx] = inst.w.v[idx] * s;
    return a;
}

namespace {

// dQ1/dQ0 as a callable, or an error when Q1 is singular w.r.t. Q0.
struct LrContext {
    const NoiseSpec& noise;

    double operator()(double w) const {
        switch (noise.family()) {
        case NoiseFamily::gaussian_shift: {
            double l = noise.lambda();
            return std::exp(l * w - l * l / 2.0);
        }
        case NoiseFamily::rademacher_clique:
        case NoiseFamily::custom_discrete: {
            const auto& q0 = noise.q0_table();
            const auto& q1 = noise.q1_table();
            double p0 = 0.0, p1 = 0.0;
            for (size_t i = 0; i < q0.support.size(); ++i)
                if (q0.support[i] == w) p0 = q0.prob[i];
            for (size_t i = 0; i < q1.support.size(); ++i)
                if (q1.support[i] == w) p1 = q1.prob[i];
            require(p0 > 0.0, errc::unsupported,
                    "observed value outside Q0 support; Q1 not absolutely continuous w.r.t. Q0");
            return p1 / p0;
        }
        }
        fail(errc::internal, "bad noise family");
    }
};

void check_absolute_continuity(const NoiseSpec& noise) {
    if (noise.family() == NoiseFamily::gaussian_shift) return;
    const auto& q0 = noise.q0_table();
    const auto& q1 = noise.q1_table();
    for (size_t i = 0; i < q1.support.size(); ++i) {
        if (q1.prob[i] <= 0.0) continue;
        bool covered = false;
        for (size_t j = 0; j < q0.support.size(); ++j)
            if (q0.support[j] == q1.support[i] && q0.prob[j] > 0.0) covered = true;
        require(covered, errc::unsupported, "Q1 support not contained in Q0 support");
    }
}

} // namespace

double lambda_tilde(const NoiseSpec& noise) {
    if (noise.family() == NoiseFamily::gaussian_shift) {
        double l = noise.lambda();
        return std::sqrt(std::exp(l * l) - 1.0);
    }
    check_absolute_continuity(noise);
    const auto& q0 = noise.q0_table();
    LrContext lr{noise};
    double acc = 0.0;
    for (size_t i = 0; i < q0.support.size(); ++i) {
        double d = lr(q0.support[i]) - 1.0;
        acc += q0.prob[i] * d * d;
    }
    return std::sqrt(acc);
}

LikelihoodTransform likelihood_transform(const DenseInstance& inst, const NoiseSpec& noise) {
    check_absolute_continuity(noise);
    LikelihoodTransform out;
    out.lambda_tilde = lambda_tilde(noise);
    out.a = Matrix(inst.n);
    if (inst.n == 0) return out;
    double s = 1.0 / std::sqrt(static_cast<double>(inst.n));
    LrContext lr{noise};
    for (int64_t i = 0; i < inst.n; ++i) {
        for (int64_t j = i + 1; j < inst.n; ++j) {
            double v = (lr(inst.w(i, j)) - 1.0) * s;
            out.a(i, j) = v;
            out.a(j, i) = v;
        }
    }
    return out;
}

} // namespace hs
