#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mixtime/chain.hpp"
#include "mixtime/rng.hpp"

namespace mixtime {

// Observed state sequence X_1..X_m over d states, stored 0-based: the 1-based
// X_t lives at states()[t-1]. Requires m >= 2 and every index in [0, d-1].
class Trajectory {
  public:
    Trajectory(std::vector<int> states, int d);

    int dim() const { return d_; }
    std::int64_t length() const { return static_cast<std::int64_t>(states_.size()); }
    int operator[](std::int64_t t) const { return states_[static_cast<std::size_t>(t)]; }
    const std::vector<int>& states() const { return states_; }

  private:
    std::vector<int> states_;
    int d_;
};

// Simulates X_1 ~ initial, X_{t+1} ~ kernel(X_t, .) by inverse-CDF sampling
// over precomputed row cumulative sums. Fully determined by the seed.
Trajectory sample_trajectory(const MarkovKernel& kernel, const StateDistribution& initial,
                             std::int64_t m, RandomSeed seed);

// Subsequence X_1, X_{1+s}, ..., X_{1+floor((m-1)/s)*s} of the s-skipped
// chain; output length floor((m-1)/s) + 1. Requires 1 <= s <= m-1.
Trajectory skip_subsample(const Trajectory& traj, std::int64_t s);

// Text format: a header line "d=<int> m=<int>" followed by one line of
// whitespace-separated 0-based state indices.
void save_trajectory(const Trajectory& traj, const std::filesystem::path& path);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace mixtime
