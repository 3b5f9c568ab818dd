#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hs {

// Trajectory of mu_{t+1} = lk * exp(mu_t^2 / 2) from mu_0 = 1. Values are
// tracked in log space as well, since a supercritical trajectory leaves the
// double range within a couple of steps of crossing ~40. Iteration stops once
// mu exceeds the ceiling; diverged_at records that index (-1 when bounded).
struct IdealTrajectory {
    double lambda_kappa = 0.0;
    std::vector<double> mu;     // +inf where not representable
    std::vector<double> log_mu; // always finite while iteration runs
    int diverged_at = -1;

    // First t with mu_t > threshold in log space, or -1.
    int first_above(double threshold) const;
};

IdealTrajectory ideal_recursion(double lambda_kappa, int t_max, double ceiling = 1e8);

// Degree-d* polynomial nonlinearities p(.,t) approximating the optimal
// exponential, normalized so E[p(Z,t)^2] = 1 for t >= 1. Coefficients are
// mu_hat^k / (k! L_hat), assembled in log space. Levels 0..last_level() are
// fully built; next_mu_hat holds mu_hat at last_level()+1 (the value that
// crossed the ceiling when diverged_at >= 0).
struct PolynomialSchedule {
    int d_star = 0;
    int t_star = 0; // horizon used by the dense pipeline; threshold is mu_hat_at(t_star)
    double lambda = 0.0;
    double kappa = 0.0;
    std::vector<std::vector<double>> coeffs; // coeffs[t] defines p(.,t)
    std::vector<double> mu_hat;              // aligned with coeffs
    std::vector<double> log_mu_hat;
    std::vector<double> l_hat; // l_hat[0] = 1 by convention
    double next_mu_hat = 0.0;
    double log_next_mu_hat = 0.0;
    int diverged_at = -1;

    int last_level() const { return static_cast<int>(coeffs.size()) - 1; }
    const std::vector<double>& f(int t) const { return coeffs[t]; }
    double mu_hat_at(int t) const;
    double log_mu_hat_at(int t) const;
};

// Builds levels 0..t_star (or fewer if the recursion crosses the ceiling, in
// which case diverged_at stamps the crossing level).
PolynomialSchedule build_schedule(double lambda, double kappa, int d_star, int t_star,
                                  double ceiling = 1e8);

// Harness default: t_star = first t with mu_hat_t > m_threshold, capped.
PolynomialSchedule build_schedule_auto(double lambda, double kappa, int d_star,
                                       double m_threshold = 10.0, int t_cap = 50,
                                       double ceiling = 1e8);

// General state evolution: mu_{t+1} = lk * E[f(mu_t + tau_t Z, t)],
// tau_{t+1}^2 = E[f(tau_t Z, t)^2], from mu_0 = 1, tau_0 = 0. Exact for
// polynomial f.
struct SETrace {
    std::vector<double> mu;
    std::vector<double> tau;
    int diverged_at = -1;
};

SETrace general_se(const PolynomialSchedule& schedule, int t_max);
SETrace general_se(std::span<const std::vector<double>> f_seq, double lambda, double kappa,
                   int t_max, double ceiling = 1e8);

// Gaussian limit recursion for the sparse log-likelihood-ratio messages,
// with the per-step decision threshold and predicted error of the
// mid-threshold rule.
struct SparseSETrace {
    double kappa = 0.0;
    std::vector<double> mu0;
    std::vector<double> mu1;
    std::vector<double> sigma2;
    std::vector<double> mu_bar;          // (mu1 + mu0) / 2
    std::vector<double> predicted_error; // 2 Phi(-(mu1 - mu0) / (2 sigma)), t >= 1
    int diverged_at = -1;
};

SparseSETrace sparse_gaussian_se(double kappa, int t_max);

} // namespace hs
