#include "mp.hpp"

#include <algorithm>
#include <thread>

#include "errors.hpp"
#include "gauss.hpp"

namespace hs {

namespace {

constexpr int64_t kTile = 64;

void run_chunked(int64_t count, int threads, auto&& body) {
    if (threads <= 1 || count < 2) {
        for (int64_t c = 0; c < count; ++c) body(c);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (int64_t c = w; c < count; c += threads) body(c);
        });
    for (auto& th : pool) th.join();
}

} // namespace

MessageState mp_init(int64_t n) {
    require(n >= 2, errc::invalid_argument, "message passing needs n >= 2");
    MessageState st;
    st.n = n;
    st.t = 0;
    st.in.assign(static_cast<size_t>(n) * n, 1.0);
    for (int64_t i = 0; i < n; ++i) st.in[i * n + i] = 0.0;
    st.vertex.assign(n, 1.0);
    return st;
}

void mp_iterate(MessageState& state, const Matrix& a, std::span<const double> f_coeffs,
                int threads) {
    const int64_t n = state.n;
    require(a.n == n, errc::invalid_argument, "matrix/state dimension mismatch");
    require(!f_coeffs.empty(), errc::invalid_argument, "empty nonlinearity");

    std::vector<double> vnew(n, 0.0);

    // Pass 1: vertex sums. The diagonal contributes nothing (A_ii = 0).
    run_chunked(n, threads, [&](int64_t i) {
        const double* arow = a.row(i);
        const double* mrow = &state.in[i * n];
        thread_local std::vector<double> fx;
        fx.resize(n);
        poly_eval_batch(f_coeffs, mrow, fx.data(), n);
        double acc = 0.0;
        for (int64_t l = 0; l < n; ++l) acc += arow[l] * fx[l];
        vnew[i] = acc;
    });

    // Pass 2: message update, in place over mirrored tile pairs. Each pair
    // (i,l)/(l,i) only reads its own two old values, so distinct tile pairs
    // are independent.
    int64_t tiles = (n + kTile - 1) / kTile;
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t ti = 0; ti < tiles; ++ti)
        for (int64_t tj = ti; tj < tiles; ++tj) pairs.emplace_back(ti, tj);

    run_chunked(static_cast<int64_t>(pairs.size()), threads, [&](int64_t p) {
        auto [ti, tj] = pairs[p];
        int64_t i0 = ti * kTile, i1 = std::min(n, i0 + kTile);
        int64_t j0 = tj * kTile, j1 = std::min(n, j0 + kTile);
        double rev[kTile], frev[kTile], ffwd[kTile];
        for (int64_t i = i0; i < i1; ++i) {
            int64_t jstart = ti == tj ? i + 1 : j0;
            int64_t m = j1 - jstart;
            if (m <= 0) continue;
            double* fwd = &state.in[i * n + jstart]; // theta_{l->i}, contiguous
            for (int64_t l = 0; l < m; ++l) rev[l] = state.in[(jstart + l) * n + i];
            poly_eval_batch(f_coeffs, rev, frev, m);
            poly_eval_batch(f_coeffs, fwd, ffwd, m);
            const double* arow = a.row(i) + jstart;
            double vi = vnew[i];
            for (int64_t l = 0; l < m; ++l) {
                state.in[(jstart + l) * n + i] = vi - arow[l] * ffwd[l];
                fwd[l] = vnew[jstart + l] - arow[l] * frev[l];
            }
        }
    });

    state.vertex = std::move(vnew);
    ++state.t;
}

} // namespace hs
