#include "gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hs {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
} // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

std::vector<double> poly_square(std::span<const double> coeffs) {
    if (coeffs.empty()) return {};
    std::vector<double> out(2 * coeffs.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < coeffs.size(); ++j) out[i + j] += coeffs[i] * coeffs[j];
    return out;
}

double gaussian_poly_mean(std::span<const double> coeffs, double shift, double scale) {
    if (coeffs.empty()) return 0.0;
    double var = scale * scale;
    // Neumaier-compensated dot of coeffs with raw moments.
    double sum = 0.0, comp = 0.0;
    double m_prev = 0.0, m_cur = 1.0; // M_0 = 1
    for (size_t k = 0; k < coeffs.size(); ++k) {
        double term = coeffs[k] * m_cur;
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        // M_{k+1} = shift*M_k + k*var*M_{k-1}
        double m_next = shift * m_cur + static_cast<double>(k) * var * m_prev;
        m_prev = m_cur;
        m_cur = m_next;
    }
    return sum + comp;
}

double gaussian_poly_second_moment(std::span<const double> coeffs, double shift, double scale) {
    auto sq = poly_square(coeffs);
    return gaussian_poly_mean(sq, shift, scale);
}

double log_double_factorial_even(int m) {
    if (m <= 0) return 0.0;
    int r = m / 2;
    // (2r-1)!! = (2r)! / (2^r r!)
    return std::lgamma(2.0 * r + 1.0) - r * std::log(2.0) - std::lgamma(r + 1.0);
}

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double log_gaussian_poly_mean(std::span<const double> log_coeffs, double shift) {
    // log M_k recursion for shift >= 0; all raw moments are positive.
    double acc = kNegInf;
    double lshift = shift > 0.0 ? std::log(shift) : kNegInf;
    double lm_prev = kNegInf, lm_cur = 0.0; // log M_0 = 0
    for (size_t k = 0; k < log_coeffs.size(); ++k) {
        if (log_coeffs[k] != kNegInf) acc = log_add(acc, log_coeffs[k] + lm_cur);
        double lnext = log_add(lshift + lm_cur,
                               k > 0 ? std::log(static_cast<double>(k)) + lm_prev : kNegInf);
        lm_prev = lm_cur;
        lm_cur = lnext;
    }
    return acc;
}

double log_gaussian_poly_second_moment_at_zero(std::span<const double> log_coeffs) {
    if (log_coeffs.empty()) return kNegInf;
    size_t deg2 = 2 * log_coeffs.size() - 2;
    double acc = kNegInf;
    for (size_t m = 0; m <= deg2; m += 2) {
        // log of the m-th coefficient of the squared polynomial
        double lc = kNegInf;
        size_t lo = m >= log_coeffs.size() ? m - log_coeffs.size() + 1 : 0;
        size_t hi = std::min(m, log_coeffs.size() - 1);
        for (size_t i = lo; i <= hi; ++i) lc = log_add(lc, log_coeffs[i] + log_coeffs[m - i]);
        if (lc != kNegInf) acc = log_add(acc, lc + log_double_factorial_even(static_cast<int>(m)));
    }
    return acc;
}

} // namespace hs
