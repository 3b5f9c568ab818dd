#include "noise.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace hs {

double DiscreteDist::mean() const {
    double m = 0.0;
    for (size_t i = 0; i < support.size(); ++i) m += support[i] * prob[i];
    return m;
}

double DiscreteDist::variance() const {
    double m = mean(), v = 0.0;
    for (size_t i = 0; i < support.size(); ++i) v += prob[i] * (support[i] - m) * (support[i] - m);
    return v;
}

double DiscreteDist::sample(double unit) const {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < support.size(); ++i) {
        acc += prob[i];
        if (unit <= acc) return support[i];
    }
    return support.back();
}

NoiseSpec NoiseSpec::rademacher_clique() {
    NoiseSpec s;
    s.family_ = NoiseFamily::rademacher_clique;
    s.lambda_ = 1.0;
    s.rho_ = 1.0;
    s.q0_ = {{1.0, -1.0}, {0.5, 0.5}};
    s.q1_ = {{1.0}, {1.0}};
    return s;
}

NoiseSpec NoiseSpec::gaussian_shift(double lambda) {
    require(lambda >= 0.0, errc::invalid_argument, "gaussian-shift lambda must be nonnegative");
    NoiseSpec s;
    s.family_ = NoiseFamily::gaussian_shift;
    s.lambda_ = lambda;
    s.rho_ = 1.0;
    return s;
}

NoiseSpec NoiseSpec::custom_discrete(DiscreteDist q0, DiscreteDist q1, double rho) {
    auto check_table = [](const DiscreteDist& d, const char* name) {
        require(!d.support.empty() && d.support.size() == d.prob.size(), errc::invalid_argument,
                std::string(name) + ": support/probability tables must be nonempty and aligned");
        double total = 0.0;
        for (double p : d.prob) {
            require(p >= 0.0, errc::invalid_argument, std::string(name) + ": negative probability");
            total += p;
        }
        require(std::abs(total - 1.0) <= 1e-12, errc::invalid_argument,
                std::string(name) + ": probabilities must sum to 1");
    };
    check_table(q0, "Q0");
    check_table(q1, "Q1");
    require(std::abs(q0.mean()) <= 1e-12, errc::invalid_argument, "Q0 must have mean 0");
    require(std::abs(q0.variance() - 1.0) <= 1e-12, errc::invalid_argument, "Q0 must have unit variance");
    double lambda = q1.mean();
    require(lambda > 0.0, errc::invalid_argument, "Q1 must have positive mean");

    NoiseSpec s;
    s.family_ = NoiseFamily::custom_discrete;
    s.lambda_ = lambda;
    if (rho <= 0.0) {
        // Bounded support: (b-a)^2/4 is a valid subgaussian scale.
        auto range_rho = [](const DiscreteDist& d) {
            double lo = d.support[0], hi = d.support[0];
            for (double x : d.support) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            return (hi - lo) * (hi - lo) / 4.0;
        };
        rho = std::max(1.0, std::max(range_rho(q0), range_rho(q1)));
    }
    s.rho_ = rho;
    s.q0_ = std::move(q0);
    s.q1_ = std::move(q1);
    return s;
}

double NoiseSpec::sample_q0(uint64_t seed, uint64_t stream, uint64_t counter) const {
    switch (family_) {
    case NoiseFamily::rademacher_clique:
        return static_cast<double>(block_sign(seed, stream, counter));
    case NoiseFamily::gaussian_shift:
        return block_gaussian(seed, stream, counter);
    case NoiseFamily::custom_discrete:
        return q0_.sample(block_unit(seed, stream, counter, 0));
    }
    fail(errc::internal, "bad noise family");
}

double NoiseSpec::sample_q1(uint64_t seed, uint64_t stream, uint64_t counter) const {
    switch (family_) {
    case NoiseFamily::rademacher_clique:
        return 1.0;
    case NoiseFamily::gaussian_shift:
        return lambda_ + block_gaussian(seed, stream, counter);
    case NoiseFamily::custom_discrete:
        return q1_.sample(block_unit(seed, stream, counter, 0));
    }
    fail(errc::internal, "bad noise family");
}

std::string NoiseSpec::family_name() const {
    switch (family_) {
    case NoiseFamily::rademacher_clique: return "rademacher";
    case NoiseFamily::gaussian_shift: return "gaussian";
    case NoiseFamily::custom_discrete: return "custom";
    }
    return "?";
}

} // namespace hs
