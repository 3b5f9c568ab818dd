#pragma once

#include <span>
#include <vector>

namespace hs {

// Standard normal CDF.
double normal_cdf(double x);

// Horner evaluation of sum_k coeffs[k] * x^k.
inline double poly_eval(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

// Horner over a batch of points; coefficient-outer loops vectorize.
inline void poly_eval_batch(std::span<const double> coeffs, const double* x, double* out,
                            int64_t count) {
    if (coeffs.empty()) {
        for (int64_t j = 0; j < count; ++j) out[j] = 0.0;
        return;
    }
    double top = coeffs[coeffs.size() - 1];
    for (int64_t j = 0; j < count; ++j) out[j] = top;
    for (size_t k = coeffs.size() - 1; k-- > 0;) {
        double c = coeffs[k];
        for (int64_t j = 0; j < count; ++j) out[j] = out[j] * x[j] + c;
    }
}

// Coefficient convolution: square of a polynomial.
std::vector<double> poly_square(std::span<const double> coeffs);

// E[p(shift + scale*Z)] for Z ~ N(0,1), computed exactly from the moment
// recursion M_k = shift*M_{k-1} + (k-1)*scale^2*M_{k-2}. Compensated
// summation over the coefficient dot product.
double gaussian_poly_mean(std::span<const double> coeffs, double shift, double scale = 1.0);

// E[p(shift + scale*Z)^2], via symbolic squaring then the exact mean.
double gaussian_poly_second_moment(std::span<const double> coeffs, double shift, double scale = 1.0);

// log((m-1)!!) for even m >= 0 (log(1) = 0 for m = 0).
double log_double_factorial_even(int m);

// Log-domain variants for polynomials with nonnegative coefficients given as
// logs. Needed by the schedule recursion where magnitudes overflow doubles.
// Returns log E[p(shift + Z)] with shift >= 0.
double log_gaussian_poly_mean(std::span<const double> log_coeffs, double shift);

// Returns log E[p(Z)^2] for log-coefficients.
double log_gaussian_poly_second_moment_at_zero(std::span<const double> log_coeffs);

// Numerically stable log(exp(a) + exp(b)).
double log_add(double a, double b);

} // namespace hs
