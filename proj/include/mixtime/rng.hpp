#pragma once

#include <cstdint>

namespace mixtime {

// 64-bit seed for the counter-based generator.
struct RandomSeed {
    std::uint64_t value = 0;
};

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Seed of the index-th sub-stream of a master seed. Sub-streams are derived
// by hashing, so replicates can draw independently without shared state.
inline RandomSeed derive_seed(RandomSeed master, std::uint64_t index) {
    return RandomSeed{detail::mix64(master.value ^ detail::mix64(detail::kGamma * (index + 1)))};
}

// Counter-based generator: the k-th output is a hash of (key, k). A given
// seed always produces the same sequence, on every platform.
class CounterRng {
  public:
    explicit CounterRng(RandomSeed seed) : key_(seed.value) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + detail::kGamma * ++counter_); }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    CounterRng substream(std::uint64_t index) const {
        return CounterRng(derive_seed(RandomSeed{key_}, index));
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace mixtime
