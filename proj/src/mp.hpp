#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace hs {

// Directed messages theta_{i->j} plus vertex values theta_i. Messages are
// stored incoming-major: in[i*n + l] = theta_{l->i}, which keeps both update
// passes contiguous. One n*n buffer, updated in place.
struct MessageState {
    int64_t n = 0;
    int t = 0;
    std::vector<double> in;
    std::vector<double> vertex;

    double message(int64_t from, int64_t to) const { return in[to * n + from]; }
    double incoming(int64_t to, int64_t from) const { return in[to * n + from]; }
};

// All messages and vertex values start at 1 (zero diagonal).
MessageState mp_init(int64_t n);

// One round:
//   theta'_i    = sum_{l != i} A_{li} f(theta_{l->i})
//   theta'_{i->j} = theta'_i - A_{ji} f(theta_{j->i})
// f is a polynomial given by its coefficients, evaluated by Horner's rule.
// Work is O(n^2 deg). Deterministic for any thread count: rows (pass 1) and
// mirrored tile pairs (pass 2) are data-independent.
void mp_iterate(MessageState& state, const Matrix& a, std::span<const double> f_coeffs,
                int threads = 1);

} // namespace hs
