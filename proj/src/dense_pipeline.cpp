#include "dense_pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "errors.hpp"
#include "gauss.hpp"
#include "mp.hpp"

namespace hs {

namespace {

int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

int64_t intersection_size(std::span<const int32_t> a, std::span<const int32_t> b) {
    // both sorted
    int64_t count = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            ++count, ++i, ++j;
    }
    return count;
}

} // namespace

std::vector<int32_t> threshold_candidates(std::span<const double> vertex_values,
                                          double mu_hat_tstar) {
    std::vector<int32_t> out;
    double thr = mu_hat_tstar / 2.0;
    for (size_t i = 0; i < vertex_values.size(); ++i)
        if (vertex_values[i] >= thr) out.push_back(static_cast<int32_t>(i));
    return out;
}

PowerResult power_method(const Matrix& m, int iterations) {
    require(m.n >= 1, errc::invalid_argument, "power method needs a nonempty matrix");
    int64_t n = m.n;
    PowerResult res;
    res.vec.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    for (int it = 0; it < iterations; ++it) {
        for (int64_t i = 0; i < n; ++i) {
            const double* row = m.row(i);
            double acc = 0.0;
            for (int64_t j = 0; j < n; ++j) acc += row[j] * res.vec[j];
            next[i] = acc;
        }
        double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        if (norm == 0.0) {
            res.rank_degenerate = true;
            return res;
        }
        for (int64_t i = 0; i < n; ++i) res.vec[i] = next[i] / norm;
    }
    return res;
}

std::vector<int32_t> top_k_abs(std::span<const double> values, int64_t k) {
    require(k >= 0 && k <= static_cast<int64_t>(values.size()), errc::invalid_argument,
            "top-k size out of range");
    std::vector<int32_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        double va = std::abs(values[a]), vb = std::abs(values[b]);
        if (va != vb) return va > vb;
        return a < b;
    });
    std::vector<int32_t> out(order.begin(), order.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> scores(const Matrix& w, std::span<const int32_t> b, double rho_bar) {
    require(!b.empty(), errc::invalid_argument, "score set must be nonempty");
    std::vector<double> zeta(w.n, 0.0);
    double inv = 1.0 / static_cast<double>(b.size());
    for (int64_t i = 0; i < w.n; ++i) {
        double acc = 0.0;
        const double* row = w.row(i);
        for (int32_t j : b) {
            if (j == i) continue;
            double x = row[j];
            if (std::abs(x) <= rho_bar) acc += x;
        }
        zeta[i] = acc * inv;
    }
    return zeta;
}

double default_rho_bar(const NoiseSpec& noise) {
    switch (noise.family()) {
    case NoiseFamily::rademacher_clique:
        return 2.0;
    case NoiseFamily::custom_discrete: {
        double m = 0.0;
        for (double x : noise.q0_table().support) m = std::max(m, std::abs(x));
        for (double x : noise.q1_table().support) m = std::max(m, std::abs(x));
        return 2.0 * m;
    }
    case NoiseFamily::gaussian_shift: {
        double l = noise.lambda();
        require(l > 0.0, errc::invalid_argument, "rho_bar needs lambda > 0");
        // Truncated mean of N(l,1) on [-r, r]: l(Phi(r-l)-Phi(-r-l)) - (phi(r-l)-phi(-r-l)).
        auto trunc_mean = [l](double r) {
            auto phi = [](double x) {
                return std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi_v<double>);
            };
            return l * (normal_cdf(r - l) - normal_cdf(-r - l)) - (phi(r - l) - phi(-r - l));
        };
        double lo = 0.0, hi = l + 8.0;
        for (int it = 0; it < 200; ++it) {
            double mid = (lo + hi) / 2.0;
            if (trunc_mean(mid) >= 7.0 * l / 8.0)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }
    }
    fail(errc::internal, "bad noise family");
}

RecoveryResult run_algorithm1(const DenseInstance& inst, int64_t k,
                              const PolynomialSchedule& schedule, int t_power, double rho_bar,
                              int threads) {
    RecoveryResult res;
    res.stats.t_star = schedule.t_star;
    if (k == 0) {
        res.success = inst.hidden.empty();
        return res;
    }
    require(k > 0 && k <= inst.n, errc::invalid_argument, "k out of range");
    if (t_power < 0) t_power = static_cast<int>(std::ceil(10.0 * std::log(std::max<int64_t>(2, inst.n))));
    if (rho_bar <= 0.0) rho_bar = default_rho_bar(inst.noise);

    int64_t t0 = now_ms();
    Matrix a = normalize(inst);
    MessageState st = mp_init(inst.n);
    for (int t = 0; t < schedule.t_star; ++t) mp_iterate(st, a, schedule.f(t), threads);
    res.stats.ms_mp = now_ms() - t0;

    res.candidate_set = threshold_candidates(st.vertex, schedule.mu_hat_at(schedule.t_star));
    res.stats.candidate_size = static_cast<int64_t>(res.candidate_set.size());
    res.stats.candidate_truth = intersection_size(res.candidate_set, inst.hidden);

    int64_t t1 = now_ms();
    if (res.stats.candidate_size < 2 || res.stats.candidate_size < k) {
        res.stats.aborted = true;
        res.success = false;
        return res;
    }

    // Power method on the candidate submatrix.
    int64_t cs = res.stats.candidate_size;
    Matrix sub(cs);
    for (int64_t i = 0; i < cs; ++i) {
        const double* row = a.row(res.candidate_set[i]);
        for (int64_t j = 0; j < cs; ++j) sub(i, j) = row[res.candidate_set[j]];
    }
    PowerResult pw = power_method(sub, t_power);

    std::vector<int32_t> local = top_k_abs(pw.vec, k);
    res.eigen_set.reserve(local.size());
    for (int32_t idx : local) res.eigen_set.push_back(res.candidate_set[idx]);
    res.stats.eigen_size = static_cast<int64_t>(res.eigen_set.size());
    res.stats.eigen_truth = intersection_size(res.eigen_set, inst.hidden);

    std::vector<double> zeta = scores(inst.w, res.eigen_set, rho_bar);
    double thr = inst.noise.lambda() / 2.0;
    for (int64_t i = 0; i < inst.n; ++i)
        if (zeta[i] >= thr) res.final_set.push_back(static_cast<int32_t>(i));
    res.stats.final_size = static_cast<int64_t>(res.final_set.size());
    res.stats.final_truth = intersection_size(res.final_set, inst.hidden);
    res.stats.ms_clean = now_ms() - t1;

    res.success = res.final_set == inst.hidden;
    return res;
}

SpectralResult spectral_solve(const Matrix& a, int64_t k, int iterations,
                              std::span<const int32_t> truth) {
    require(k >= 0 && k <= a.n, errc::invalid_argument, "k out of range");
    SpectralResult res;
    // Shift so the algebraically largest eigenvalue dominates in modulus;
    // the eigenvectors are unchanged.
    Matrix shifted = a;
    for (int64_t i = 0; i < a.n; ++i) shifted(i, i) += 3.0;
    PowerResult pw = power_method(shifted, iterations);
    res.set = top_k_abs(pw.vec, k);
    if (!truth.empty()) {
        double dot = 0.0;
        for (int32_t i : truth) dot += pw.vec[i];
        res.eigvec_overlap = std::abs(dot) / std::pow(static_cast<double>(a.n), 0.25);
        res.truth_overlap_fraction =
            static_cast<double>(intersection_size(res.set, truth)) / truth.size();
    }
    return res;
}

} // namespace hs
