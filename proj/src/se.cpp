#include "se.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "gauss.hpp"

namespace hs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogDoubleMax = 709.0;
} // namespace

int IdealTrajectory::first_above(double threshold) const {
    double lt = std::log(threshold);
    for (size_t t = 0; t < log_mu.size(); ++t)
        if (log_mu[t] > lt) return static_cast<int>(t);
    return -1;
}

IdealTrajectory ideal_recursion(double lambda_kappa, int t_max, double ceiling) {
    require(lambda_kappa > 0.0, errc::invalid_argument, "lambda*kappa must be positive");
    require(t_max >= 0, errc::invalid_argument, "t_max must be nonnegative");
    IdealTrajectory out;
    out.lambda_kappa = lambda_kappa;
    out.mu.push_back(1.0);
    out.log_mu.push_back(0.0);
    double log_lk = std::log(lambda_kappa);
    double log_ceiling = std::log(ceiling);
    for (int t = 0; t < t_max; ++t) {
        double mu_t = out.mu.back();
        if (out.log_mu.back() > log_ceiling) {
            out.diverged_at = t;
            break;
        }
        double log_next = log_lk + mu_t * mu_t / 2.0;
        out.log_mu.push_back(log_next);
        out.mu.push_back(log_next <= kLogDoubleMax ? std::exp(log_next) : kInf);
        if (log_next > log_ceiling) {
            out.diverged_at = t + 1;
            break;
        }
    }
    return out;
}

namespace {

// One schedule level: normalized log-coefficients of p(.,level) built from
// log mu_hat, plus log L_hat.
struct Level {
    std::vector<double> log_coeffs;
    double log_l_hat;
};

Level build_level(double log_mu_hat, int d_star) {
    Level lv;
    lv.log_coeffs.resize(d_star + 1);
    for (int k = 0; k <= d_star; ++k)
        lv.log_coeffs[k] = k * log_mu_hat - std::lgamma(k + 1.0);
    lv.log_l_hat = 0.5 * log_gaussian_poly_second_moment_at_zero(lv.log_coeffs);
    for (auto& lc : lv.log_coeffs) lc -= lv.log_l_hat;
    return lv;
}

} // namespace

double PolynomialSchedule::mu_hat_at(int t) const {
    if (t >= 0 && t <= last_level()) return mu_hat[t];
    require(t == last_level() + 1, errc::invalid_argument, "mu_hat index out of range");
    return next_mu_hat;
}

double PolynomialSchedule::log_mu_hat_at(int t) const {
    if (t >= 0 && t <= last_level()) return log_mu_hat[t];
    require(t == last_level() + 1, errc::invalid_argument, "mu_hat index out of range");
    return log_next_mu_hat;
}

PolynomialSchedule build_schedule(double lambda, double kappa, int d_star, int t_star,
                                  double ceiling) {
    require(d_star >= 1, errc::invalid_argument, "d_star must be at least 1");
    require(t_star >= 1, errc::invalid_argument, "t_star must be at least 1");
    require(lambda * kappa > 0.0, errc::invalid_argument, "lambda*kappa must be positive");

    PolynomialSchedule s;
    s.d_star = d_star;
    s.lambda = lambda;
    s.kappa = kappa;

    double log_lk = std::log(lambda * kappa);
    double log_ceiling = std::log(ceiling);

    // Level 0: p(.,0) = 1, mu_hat_0 = 1.
    std::vector<double> c0(d_star + 1, 0.0);
    c0[0] = 1.0;
    s.coeffs.push_back(std::move(c0));
    s.l_hat.push_back(1.0);
    s.mu_hat.push_back(1.0);
    s.log_mu_hat.push_back(0.0);

    // mu_hat_{l+1} = lambda*kappa * E[p(mu_hat_l + Z, l)]; level 0 gives
    // exactly lambda*kappa.
    double log_mu_next = log_lk;
    for (int level = 1; level <= t_star; ++level) {
        if (log_mu_next > log_ceiling) {
            s.diverged_at = level;
            break;
        }
        double mu = std::exp(log_mu_next);
        s.mu_hat.push_back(mu);
        s.log_mu_hat.push_back(log_mu_next);

        Level lv = build_level(log_mu_next, d_star);
        std::vector<double> plain(d_star + 1);
        for (int k = 0; k <= d_star; ++k) plain[k] = std::exp(lv.log_coeffs[k]);
        s.coeffs.push_back(std::move(plain));
        s.l_hat.push_back(std::exp(lv.log_l_hat));

        log_mu_next = log_lk + log_gaussian_poly_mean(lv.log_coeffs, mu);
    }
    s.log_next_mu_hat = log_mu_next;
    s.next_mu_hat = log_mu_next <= kLogDoubleMax ? std::exp(log_mu_next) : kInf;
    s.t_star = static_cast<int>(s.coeffs.size()) - 1;
    return s;
}

PolynomialSchedule build_schedule_auto(double lambda, double kappa, int d_star,
                                       double m_threshold, int t_cap, double ceiling) {
    PolynomialSchedule s = build_schedule(lambda, kappa, d_star, t_cap, ceiling);
    double log_m = std::log(m_threshold);
    int t_star = -1;
    for (size_t t = 0; t < s.log_mu_hat.size(); ++t) {
        if (s.log_mu_hat[t] > log_m) {
            t_star = static_cast<int>(t);
            break;
        }
    }
    // The crossing may have jumped straight past the ceiling; the one-past
    // value is still a usable horizon (its polynomial is never evaluated).
    if (t_star < 0 && s.log_next_mu_hat > log_m) t_star = s.last_level() + 1;
    if (t_star < 0) t_star = std::min(t_cap, s.last_level() + 1);
    s.t_star = std::max(1, std::min(t_star, t_cap));
    return s;
}

namespace {

SETrace run_se(const std::vector<std::vector<double>>& fs, double lambda_kappa, int t_max,
               double ceiling) {
    SETrace tr;
    tr.mu.push_back(1.0);
    tr.tau.push_back(0.0);
    for (int t = 0; t < t_max && t < static_cast<int>(fs.size()); ++t) {
        const auto& f = fs[t];
        double mu_next = lambda_kappa * gaussian_poly_mean(f, tr.mu.back(), tr.tau.back());
        double tau2_next = gaussian_poly_second_moment(f, 0.0, tr.tau.back());
        if (!std::isfinite(mu_next) || !std::isfinite(tau2_next) || mu_next > ceiling) {
            tr.diverged_at = t + 1;
            break;
        }
        tr.mu.push_back(mu_next);
        tr.tau.push_back(std::sqrt(tau2_next));
    }
    return tr;
}

} // namespace

SETrace general_se(const PolynomialSchedule& schedule, int t_max) {
    return run_se(schedule.coeffs, schedule.lambda * schedule.kappa, t_max, 1e8);
}

SETrace general_se(std::span<const std::vector<double>> f_seq, double lambda, double kappa,
                   int t_max, double ceiling) {
    std::vector<std::vector<double>> fs(f_seq.begin(), f_seq.end());
    return run_se(fs, lambda * kappa, t_max, ceiling);
}

SparseSETrace sparse_gaussian_se(double kappa, int t_max) {
    require(kappa > 0.0, errc::invalid_argument, "kappa must be positive");
    require(t_max >= 0, errc::invalid_argument, "t_max must be nonnegative");
    SparseSETrace tr;
    tr.kappa = kappa;
    double kh = std::log(kappa);
    tr.mu0.push_back(kh);
    tr.mu1.push_back(kh);
    tr.sigma2.push_back(0.0);
    tr.mu_bar.push_back(kh);
    tr.predicted_error.push_back(1.0); // degenerate at t = 0
    for (int t = 0; t < t_max; ++t) {
        double e0 = 2.0 * tr.mu0.back() + 2.0 * tr.sigma2.back();
        double e1 = tr.mu1.back() + tr.sigma2.back() / 2.0;
        if (e0 > kLogDoubleMax || e1 > kLogDoubleMax) {
            tr.diverged_at = t + 1;
            break;
        }
        double grow0 = std::exp(e0);
        double mu0 = kh - 0.5 * grow0;
        double mu1 = kh + kappa * std::exp(e1) - 0.5 * grow0;
        double sigma2 = grow0;
        if (!std::isfinite(mu1) || !std::isfinite(sigma2)) {
            tr.diverged_at = t + 1;
            break;
        }
        tr.mu0.push_back(mu0);
        tr.mu1.push_back(mu1);
        tr.sigma2.push_back(sigma2);
        tr.mu_bar.push_back(0.5 * (mu1 + mu0));
        tr.predicted_error.push_back(2.0 * normal_cdf(-(mu1 - mu0) / (2.0 * std::sqrt(sigma2))));
    }
    return tr;
}

} // namespace hs
