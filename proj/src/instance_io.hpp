#pragma once

#include <string>

#include "dense_instance.hpp"
#include "graph.hpp"

namespace hs {

// Self-describing binary container ("HSIN", version 1). Dense payloads store
// the header {n, k, noise family, lambda, seed}, the hidden set, and the full
// matrix as little-endian float64 row-major; sparse payloads store the edge
// list, labels and per-edge weights.
void save_dense_instance(const DenseInstance& inst, const std::string& path);
DenseInstance load_dense_instance(const std::string& path);

void save_sparse_instance(const SparseInstance& inst, const std::string& path);
SparseInstance load_sparse_instance(const std::string& path);

// Peeks at the container kind: 0 = dense, 1 = sparse.
uint32_t instance_file_kind(const std::string& path);

} // namespace hs
