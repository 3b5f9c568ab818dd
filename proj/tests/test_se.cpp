#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "gauss.hpp"
#include "se.hpp"

using namespace hs;

namespace {

// Independent root finder for mu = c * exp(mu^2/2) (smallest positive root),
// used against the recursion's limit.
double smallest_root_exp_half_square(double c) {
    auto h = [c](double m) { return m - c * std::exp(m * m / 2.0); };
    double lo = 0.0, hi = 1.0;
    REQUIRE(h(lo) < 0.0);
    REQUIRE(h(hi) > 0.0);
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2.0;
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2.0;
}

} // namespace

TEST_CASE("ideal recursion: direct formula values") {
    auto tr = ideal_recursion(0.7, 3);
    REQUIRE(tr.mu.size() >= 3);
    CHECK(tr.mu[0] == 1.0);
    double mu1 = 0.7 * std::exp(0.5);
    CHECK(tr.mu[1] == doctest::Approx(mu1).epsilon(1e-14));
    CHECK(tr.mu[2] == doctest::Approx(0.7 * std::exp(mu1 * mu1 / 2.0)).epsilon(1e-14));
}

TEST_CASE("ideal recursion: fixed point at lambda*kappa = 1/sqrt(e)") {
    auto tr = ideal_recursion(std::exp(-0.5), 10);
    for (double m : tr.mu) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr.diverged_at == -1);
}

TEST_CASE("ideal recursion: subcritical trajectory converges to the smallest root") {
    auto tr = ideal_recursion(0.5, 200);
    REQUIRE(tr.diverged_at == -1);
    REQUIRE(tr.mu.size() == 201);
    double root = smallest_root_exp_half_square(0.5);
    CHECK(std::abs(tr.mu[200] - root) < 1e-6);
    for (double m : tr.mu) CHECK(m <= 1.2);
}

TEST_CASE("ideal recursion: supercritical divergence is flagged, log values survive") {
    auto tr = ideal_recursion(0.7, 40);
    CHECK(tr.diverged_at > 0);
    CHECK(tr.first_above(1000.0) > 0);
    CHECK(tr.first_above(1000.0) <= 40);
    for (double lm : tr.log_mu) CHECK(std::isfinite(lm));
}

TEST_CASE("schedule: closed forms for d_star = 1, lambda*kappa = 1") {
    auto s = build_schedule(1.0, 1.0, 1, 2);
    // p(.,0) = 1 so mu_hat_1 = lambda*kappa
    CHECK(s.mu_hat[1] == doctest::Approx(1.0).epsilon(1e-12));
    // L_hat_1 = sqrt(1 + mu_hat_1^2)
    CHECK(s.l_hat[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // mu_hat_2 = (1 + mu_hat_1^2)/L_hat_1 = sqrt(2)
    CHECK(s.mu_hat[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("schedule coefficients follow mu^k / (k! L)") {
    auto s = build_schedule(1.0, 0.9, 6, 4);
    for (int t = 1; t <= s.last_level(); ++t) {
        double mu = s.mu_hat[t], lh = s.l_hat[t];
        double fact = 1.0;
        for (int k = 0; k <= s.d_star; ++k) {
            if (k > 0) fact *= k;
            CHECK(s.coeffs[t][k] ==
                  doctest::Approx(std::pow(mu, k) / (fact * lh)).epsilon(1e-10));
        }
    }
}

TEST_CASE("schedule normalization: E[p(Z,t)^2] = 1 to 1e-10") {
    for (double lk : {0.5, 0.7, 1.0}) {
        for (int d : {10, 40}) {
            auto s = build_schedule(1.0, lk, d, 12);
            for (int t = 1; t <= s.last_level(); ++t) {
                double m2 = gaussian_poly_second_moment(s.coeffs[t], 0.0);
                CHECK(std::abs(m2 - 1.0) <= 1e-10);
            }
        }
    }
}

TEST_CASE("schedule supercriticality and subcritical boundedness") {
    auto super = build_schedule_auto(1.0, 0.7, 40, 10.0, 30);
    bool crossed = false;
    for (size_t t = 0; t < super.mu_hat.size(); ++t) crossed |= super.mu_hat[t] > 10.0;
    crossed |= super.next_mu_hat > 10.0;
    CHECK(crossed);
    CHECK(super.t_star <= 30);
    CHECK(super.mu_hat_at(super.t_star) > 10.0);

    auto sub = build_schedule(1.0, 0.5, 40, 100);
    CHECK(sub.diverged_at == -1);
    REQUIRE(sub.last_level() == 100);
    for (double m : sub.mu_hat) CHECK(m <= 1.2);
}

TEST_CASE("monotone coupling: schedule mu_hat never exceeds the ideal recursion") {
    for (double lk : {0.5, 0.7, 1.0}) {
        auto ideal = ideal_recursion(lk, 30);
        for (int d : {5, 10, 40}) {
            auto s = build_schedule(1.0, lk, d, 30);
            size_t upto = std::min(s.log_mu_hat.size(), ideal.log_mu.size());
            for (size_t t = 0; t < upto; ++t)
                CHECK(s.log_mu_hat[t] <= ideal.log_mu[t] + 1e-12);
        }
    }
}

TEST_CASE("d_star consistency: degree 40 and 60 agree at t = 2 for lk <= 1") {
    for (double lk : {0.5, 0.8, 1.0}) {
        auto a = build_schedule(1.0, lk, 40, 2);
        auto b = build_schedule(1.0, lk, 60, 2);
        CHECK(std::abs(a.mu_hat[2] - b.mu_hat[2]) < 1e-6);
    }
}

TEST_CASE("general SE with the schedule gives mu = mu_hat, tau = 1") {
    for (double lk : {0.5, 0.7, 1.0}) {
        auto s = build_schedule(1.0, lk, 40, 10);
        auto tr = general_se(s, 10);
        for (size_t t = 1; t < tr.mu.size() && t < s.mu_hat.size(); ++t) {
            CHECK(tr.mu[t] == doctest::Approx(s.mu_hat[t]).epsilon(1e-9));
            CHECK(std::abs(tr.tau[t] - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("general SE with custom f sequences") {
    // f(x,t) = x: mu_t = (lk)^t, tau stays 0
    std::vector<std::vector<double>> id(6, std::vector<double>{0.0, 1.0});
    auto lin = general_se(id, 1.0, 0.8, 6);
    for (size_t t = 0; t < lin.mu.size(); ++t) {
        CHECK(lin.mu[t] == doctest::Approx(std::pow(0.8, t)).epsilon(1e-12));
        CHECK(lin.tau[t] == doctest::Approx(0.0));
    }
    // f(x,t) = 1: mu_t = lk, tau_t = 1 for t >= 1
    std::vector<std::vector<double>> ones(6, std::vector<double>{1.0});
    auto flat = general_se(ones, 1.0, 0.8, 6);
    for (size_t t = 1; t < flat.mu.size(); ++t) {
        CHECK(flat.mu[t] == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(flat.tau[t] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sparse SE closed forms at t = 1") {
    for (double kappa : {0.5, 1.0, 2.0}) {
        auto tr = sparse_gaussian_se(kappa, 1);
        REQUIRE(tr.mu0.size() >= 2);
        CHECK(tr.mu0[1] == doctest::Approx(std::log(kappa) - kappa * kappa / 2.0).epsilon(1e-14));
        CHECK(tr.mu1[1] == doctest::Approx(std::log(kappa) + kappa * kappa / 2.0).epsilon(1e-14));
        CHECK(tr.sigma2[1] == doctest::Approx(kappa * kappa).epsilon(1e-14));
    }
    auto unit = sparse_gaussian_se(1.0, 1);
    CHECK(unit.mu_bar[1] == doctest::Approx(0.0));
    CHECK(unit.predicted_error[1] == doctest::Approx(2.0 * normal_cdf(-0.5)).epsilon(1e-12));
    CHECK(unit.predicted_error[1] == doctest::Approx(0.61708).epsilon(1e-4));
}

TEST_CASE("sparse SE: mu1 >= mu0 everywhere, ratio increases supercritically") {
    for (double kappa : {0.4, 0.7, 1.0, 1.5}) {
        auto tr = sparse_gaussian_se(kappa, 20);
        for (size_t t = 0; t < tr.mu0.size(); ++t) CHECK(tr.mu1[t] >= tr.mu0[t]);
    }
    auto tr = sparse_gaussian_se(0.7, 20);
    // ratio (mu1-mu0)/sigma strictly increases on the computed range; the
    // recursion leaves double range quickly, which the flag records
    double prev = 0.0;
    for (size_t t = 1; t < tr.mu0.size(); ++t) {
        double ratio = (tr.mu1[t] - tr.mu0[t]) / std::sqrt(tr.sigma2[t]);
        CHECK(ratio > prev);
        prev = ratio;
    }
    CHECK(tr.mu0.size() >= 8);
    CHECK(tr.diverged_at > 0); // sigma^2 growth is doubly exponential at 0.7
    auto sub = sparse_gaussian_se(0.4, 50);
    CHECK(sub.diverged_at == -1); // subcritical recursion stays bounded
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(ideal_recursion(0.0, 5), error);
    CHECK_THROWS_AS(build_schedule(1.0, 1.0, 0, 5), error);
    CHECK_THROWS_AS(build_schedule(1.0, 1.0, 5, 0), error);
    CHECK_THROWS_AS(sparse_gaussian_se(-1.0, 5), error);
}
