// rng.hpp — splitmix64 generator and derived sample streams
//
// splitmix64 is a counter-based 64-bit generator: the state advances by the
// golden-ratio constant and each output is a finalizer mix of the counter.
// Runs are replayable from the recorded algorithm name ("splitmix64") and
// seed alone.  Stream k of a master seed is the k-th raw output of a
// splitmix64 sequence started at the master seed, so per-sample streams are
// addressable without generating the whole sequence.

#pragma once

#include <cstdint>

namespace ebr {

inline constexpr const char* kRngAlgorithm = "splitmix64";

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // [0, 1), 53 random bits
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// k-th output of splitmix64 started at master (k >= 0).
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t k) {
    return mix64(master + (k + 1) * kGolden);
}

} // namespace ebr
