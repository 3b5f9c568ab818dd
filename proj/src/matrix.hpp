#pragma once

#include <cstdint>
#include <vector>

namespace hs {

// Dense square matrix, row-major, both triangles stored (8*n*n bytes).
struct Matrix {
    int64_t n = 0;
    std::vector<double> v;

    Matrix() = default;
    explicit Matrix(int64_t dim) : n(dim), v(static_cast<size_t>(dim) * dim, 0.0) {}

    double& operator()(int64_t i, int64_t j) { return v[static_cast<size_t>(i) * n + j]; }
    double operator()(int64_t i, int64_t j) const { return v[static_cast<size_t>(i) * n + j]; }

    double* row(int64_t i) { return v.data() + static_cast<size_t>(i) * n; }
    const double* row(int64_t i) const { return v.data() + static_cast<size_t>(i) * n; }
};

} // namespace hs
