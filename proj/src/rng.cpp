#include "lpplab/rng.hpp"

#include <cmath>

#include "lpplab/error.hpp"

namespace lpplab {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter c, Key k) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

RandomStream::RandomStream(std::uint64_t seed, Stream tag, std::uint32_t lane)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      tag_(static_cast<std::uint32_t>(tag)),
      lane_(lane) {}

void RandomStream::refill() {
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(index_),
                            static_cast<std::uint32_t>(index_ >> 32), tag_, lane_};
    buf_ = Philox4x32::block(ctr, key_);
    ++index_;
    pos_ = 0;
}

std::uint32_t RandomStream::next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

std::uint64_t RandomStream::next_u64() {
    std::uint64_t hi = next_u32();
    std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential(double rate) {
    return -std::log(uniform_open()) / rate;
}

std::uint64_t RandomStream::below(std::uint64_t n) {
    require(n > 0, "below: n must be positive");
    // Lemire's nearly-divisionless rejection.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t replica_seed(std::uint64_t base, std::uint64_t i) {
    return mix64(base + 0x9E3779B97F4A7C15ull * (i + 1));
}

}  // namespace lpplab
