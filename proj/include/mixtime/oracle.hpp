#pragma once

#include <cstdint>
#include <vector>

#include "mixtime/chain.hpp"

namespace mixtime {

// One scanned skip rate: kappa_s = kappa(M^s) and its per-step rate
// (1 - kappa_s) / s.
struct SkipCoefficient {
    std::int64_t s = 0;
    double kappa_s = 0.0;
    double rate = 0.0;
};

// Exact generalized contraction coefficient of an ergodic kernel:
// kappa_gen = 1 - max_s (1 - kappa_s)/s, with k_gen the smallest maximizer.
struct ExactContraction {
    double kappa_gen = 0.0;
    std::int64_t k_gen = 0;
    std::int64_t scanned_up_to = 0;
    std::vector<SkipCoefficient> per_s;
};

// Two-sided bracket (1-2xi)/(1-kappa_gen) <= tmix <= (1+ln(1/xi))/(1-kappa_gen).
struct SandwichBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t tmix = 0;
    bool holds = false;
};

// Worst-case total variation distance to stationarity after t steps,
// h(t) = max_i TV(M^t(i, .), pi). The supremum over all initial distributions
// is attained at a point mass by convexity of total variation.
double distance_to_stationarity(const MarkovKernel& kernel, std::int64_t t);

// Smallest t with h(t) < xi (strict). xi must lie in (0, 1/2); by convention
// the default is 1/4. Throws ConvergenceError past 1e7 steps.
std::int64_t exact_mixing_time(const MarkovKernel& kernel, double xi = 0.25);

// Dobrushin coefficient of the s-step kernel M^s.
double exact_kappa_s(const MarkovKernel& kernel, std::int64_t s);

// Scans s = 1, 2, ... keeping the best rate v = max (1-kappa_s)/s. Once v > 0
// the scan stops after s exceeds max(wielandt_index(d), ceil(1/v)), since
// (1-kappa_s)/s <= 1/s can no longer beat v. Hard cap of 1e6 skips.
ExactContraction exact_generalized_contraction(const MarkovKernel& kernel);

SandwichBounds sandwich_bounds(const MarkovKernel& kernel, double xi = 0.25);

// Mixing time of the s-skipped chain, i.e. of M^s; at most ceil(tmix/s).
std::int64_t skipped_mixing_time(const MarkovKernel& kernel, std::int64_t s, double xi = 0.25);

}  // namespace mixtime
