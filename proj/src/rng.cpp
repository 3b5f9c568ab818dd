#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace hs {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline double unit_from_u64(uint64_t x) {
    // 53 mantissa bits, shifted into (0, 1].
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

std::array<uint32_t, 4> philox_block(uint64_t key, uint64_t stream, uint64_t counter) {
    uint32_t k0 = static_cast<uint32_t>(key);
    uint32_t k1 = static_cast<uint32_t>(key >> 32);
    std::array<uint32_t, 4> c = {
        static_cast<uint32_t>(counter),
        static_cast<uint32_t>(counter >> 32),
        static_cast<uint32_t>(stream),
        static_cast<uint32_t>(stream >> 32),
    };
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }
    return c;
}

uint64_t derive_seed(uint64_t base, uint64_t index) {
    auto b = philox_block(base, streams::derive, index);
    return (static_cast<uint64_t>(b[0]) << 32) | b[1];
}

void Rng::refill() {
    buf_ = philox_block(key_, stream_, block_++);
    pos_ = 0;
}

uint32_t Rng::next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
}

uint64_t Rng::next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double Rng::next_unit() {
    return unit_from_u64(next_u64());
}

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return gauss_spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    gauss_spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

uint32_t Rng::next_below(uint32_t bound) {
    return static_cast<uint32_t>((static_cast<uint64_t>(next_u32()) * bound) >> 32);
}

double block_unit(uint64_t key, uint64_t stream, uint64_t counter, int slot) {
    auto b = philox_block(key, stream, counter);
    uint64_t x = slot == 0 ? (static_cast<uint64_t>(b[0]) << 32) | b[1]
                           : (static_cast<uint64_t>(b[2]) << 32) | b[3];
    return unit_from_u64(x);
}

double block_gaussian(uint64_t key, uint64_t stream, uint64_t counter) {
    auto b = philox_block(key, stream, counter);
    double u1 = unit_from_u64((static_cast<uint64_t>(b[0]) << 32) | b[1]);
    double u2 = unit_from_u64((static_cast<uint64_t>(b[2]) << 32) | b[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int block_sign(uint64_t key, uint64_t stream, uint64_t counter) {
    return (philox_block(key, stream, counter)[0] & 1u) ? 1 : -1;
}

} // namespace hs
