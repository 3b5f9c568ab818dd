#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hs {

enum class NoiseFamily : uint32_t {
    rademacher_clique = 0, // Q0 uniform on {+1,-1}, Q1 = point mass at +1
    gaussian_shift = 1,    // Q0 = N(0,1), Q1 = N(lambda,1)
    custom_discrete = 2,   // explicit support/probability tables
};

struct DiscreteDist {
    std::vector<double> support;
    std::vector<double> prob;

    double mean() const;
    double variance() const;
    // Inverse-CDF draw from a uniform in (0,1].
    double sample(double unit) const;
};

// The distribution pair (Q0, Q1). Q0 has mean 0 and unit variance, Q1 has
// mean lambda > 0; rho is the common subgaussian scale.
class NoiseSpec {
public:
    static NoiseSpec rademacher_clique();
    static NoiseSpec gaussian_shift(double lambda);
    // Validates Q0 mean/variance to 1e-12 at construction.
    static NoiseSpec custom_discrete(DiscreteDist q0, DiscreteDist q1, double rho = 0.0);

    NoiseFamily family() const { return family_; }
    double lambda() const { return lambda_; }
    double rho() const { return rho_; }
    bool two_point() const { return family_ == NoiseFamily::rademacher_clique; }

    const DiscreteDist& q0_table() const { return q0_; }
    const DiscreteDist& q1_table() const { return q1_; }

    // One matrix entry, addressed by (seed, stream, counter). Exactly one
    // Philox block per entry, whatever the family.
    double sample_q0(uint64_t seed, uint64_t stream, uint64_t counter) const;
    double sample_q1(uint64_t seed, uint64_t stream, uint64_t counter) const;

    std::string family_name() const;

private:
    NoiseSpec() = default;

    NoiseFamily family_ = NoiseFamily::rademacher_clique;
    double lambda_ = 1.0;
    double rho_ = 1.0;
    DiscreteDist q0_, q1_; // populated for custom_discrete (and rademacher)
};

} // namespace hs
