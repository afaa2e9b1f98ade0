#pragma once

#include <array>
#include <cstdint>

namespace lpplab {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// Every random stream in the project is addressed by (seed, tag, lane,
// index): the 64-bit seed is the Philox key, the 128-bit counter is
// [index_lo, index_hi, tag, lane]. Distinct (seed, tag, lane) triples never
// share a counter block, so streams are independent by construction and a
// configuration can be regenerated bit-for-bit on any platform.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/// Stream tags. Values are part of the reproducibility contract.
enum class Stream : std::uint32_t {
    bulk = 1,
    sources = 2,
    sinks = 3,
    repair = 4,
    coin = 5,
    path_choice = 6,
    synthetic = 7,
};

class RandomStream {
  public:
    RandomStream(std::uint64_t seed, Stream tag, std::uint32_t lane = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// 53-bit uniform on [0, 1).
    double uniform();
    /// Uniform on the open interval (0, 1).
    double uniform_open();
    /// Exponential with the given rate (> 0).
    double exponential(double rate);
    /// Unbiased integer on [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return (next_u32() & 1u) != 0; }

  private:
    void refill();

    Philox4x32::Key key_;
    std::uint32_t tag_;
    std::uint32_t lane_;
    std::uint64_t index_ = 0;
    Philox4x32::Counter buf_{};
    int pos_ = 4;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

/// Seed of replica `i` under `base`. Injective in `i` for a fixed base.
std::uint64_t replica_seed(std::uint64_t base, std::uint64_t i);

}  // namespace lpplab
