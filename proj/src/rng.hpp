#pragma once

#include <array>
#include <cstdint>

namespace hs {

// Philox4x32-10 counter-based generator. Every 128-bit block is a pure
// function of (key, stream, counter), so draws can be addressed directly:
// parallel consumers cannot perturb each other's streams, and any single
// draw can be regenerated in isolation.
std::array<uint32_t, 4> philox_block(uint64_t key, uint64_t stream, uint64_t counter);

// Derives an independent 64-bit seed from (base, index). Used by the harness
// to split trial seeds off a base seed.
uint64_t derive_seed(uint64_t base, uint64_t index);

// Fixed stream ids; keeps draw addressing disjoint across purposes.
namespace streams {
inline constexpr uint64_t derive = 0x01;
inline constexpr uint64_t hidden_set = 0x02;
inline constexpr uint64_t dense_entries = 0x03;
inline constexpr uint64_t graph_pairing = 0x04;
inline constexpr uint64_t sparse_labels = 0x05;
inline constexpr uint64_t sparse_weights = 0x06;
inline constexpr uint64_t population = 0x100; // + f(t, pool)
inline constexpr uint64_t local_rule = 0x200;
inline constexpr uint64_t general = 0x7f;
} // namespace streams

// Sequential view over one (key, stream) lane, starting at a block offset.
class Rng {
public:
    Rng(uint64_t key, uint64_t stream, uint64_t start_block = 0)
        : key_(key), stream_(stream), block_(start_block) {}

    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double next_unit();

    // Standard normal via Box-Muller; consumes exactly one block per pair.
    double next_gaussian();

    // Uniform on {0, 1, ..., bound-1} via multiply-shift.
    uint32_t next_below(uint32_t bound);

    uint64_t block_cursor() const { return block_; }

private:
    void refill();

    uint64_t key_;
    uint64_t stream_;
    uint64_t block_;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    double gauss_spare_ = 0.0;
    bool have_spare_ = false;
};

// Helpers over a single addressed block (used where draws are indexed by an
// entry id rather than consumed sequentially).
double block_unit(uint64_t key, uint64_t stream, uint64_t counter, int slot); // slot 0 or 1
double block_gaussian(uint64_t key, uint64_t stream, uint64_t counter);
int block_sign(uint64_t key, uint64_t stream, uint64_t counter); // +1 or -1

} // namespace hs
