#pragma once

#include <cstdint>
#include <vector>

#include "mixtime/chain.hpp"
#include "mixtime/sampler.hpp"

namespace mixtime {

// Visit and transition counts of the s-skipped chain, taken over the first
// floor((m-1)/s) skipped positions; the final skipped state is excluded from
// the visit counts.
struct SkipCounts {
    std::int64_t s = 0;
    int d = 0;
    std::vector<std::int64_t> visits;       // N_i, per state
    std::vector<std::int64_t> transitions;  // N_ij, row-major d*d
    std::int64_t n_min = 0;
    std::int64_t num_steps = 0;             // floor((m-1)/s)

    std::int64_t visit(int i) const { return visits[static_cast<std::size_t>(i)]; }
    std::int64_t transition(int i, int j) const {
        return transitions[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                           static_cast<std::size_t>(j)];
    }
};

// Empirical transition matrix built from counts, with optional additive
// smoothing: row i is (N_ij + lambda) / (N_i + d*lambda). visited flags which
// rows had N_i > 0; with lambda = 0 an unvisited row falls back to uniform.
struct EmpiricalKernel {
    MarkovKernel kernel;
    double lambda = 0.0;
    std::vector<bool> visited;
};

// One scanned skip rate of the plug-in estimator.
struct SkipEstimate {
    std::int64_t s = 0;
    double kappa_s = 0.0;
    double rate = 0.0;  // (1 - kappa_s) / s
};

// Truncated plug-in estimate kappa_hat = 1 - max_{s in [S]} (1 - kappa_s)/s,
// with arg_s the smallest maximizing skip.
struct ContractionEstimate {
    double kappa_hat = 0.0;
    std::vector<SkipEstimate> per_s;
    std::int64_t arg_s = 0;
    std::int64_t S = 0;
};

// Per-skip contribution (4/s) * L_s * sqrt(d / N_min^(s)) to the interval
// width; term is +infinity when the skipped chain missed a state entirely.
struct IntervalTerm {
    std::int64_t s = 0;
    double log_factor = 0.0;
    std::int64_t n_min = 0;
    double term = 0.0;
};

// Two-sided interval around kappa_hat of half-width
//   1/S + max_s (4/s) * L_s * sqrt(d / N_min^(s)),
// clamped into [0, 1). A trajectory that leaves some state unvisited at some
// skip rate yields the vacuous interval [0, 1) with the degenerate flag set.
struct ConfidenceInterval {
    double center = 0.0;
    double width = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double delta = 0.0;
    bool degenerate = false;
    std::vector<IntervalTerm> per_s_terms;
};

// Mixing-time point estimate 1/(1 - kappa_hat) from the adaptive estimator,
// with the ceiling as its integerization. kappa_hat == 1 carries no
// information about the mixing time, so the result is flagged instead.
struct MixingTimeEstimate {
    double t_hat_real = 0.0;
    std::int64_t t_hat_int = 0;
    bool insufficient_data = false;
    ContractionEstimate contraction;
};

SkipCounts accumulate_counts(const Trajectory& traj, std::int64_t s);

EmpiricalKernel empirical_kernel(const SkipCounts& counts, double lambda);

double empirical_dobrushin(const EmpiricalKernel& ek);

// Scans s = 1..S; requires 1 <= S <= m-1.
ContractionEstimate estimate_kappa_gen(const Trajectory& traj, std::int64_t S, double lambda);

// Smallest t >= 1 with (1 + pos_ceil(ln(2m/(t*r)))) * (d+1) * e^(-t) <= delta/(d*S),
// found by bisection to absolute tolerance 1e-9. The bound is non-increasing
// in t and tends to 0, so a solution always exists.
double solve_log_factor(std::int64_t m, std::int64_t r, int d, std::int64_t S, double delta);

ConfidenceInterval confidence_interval(const Trajectory& traj, std::int64_t S, double delta,
                                       double lambda);

// Absolute-error point estimator: scans the first ceil(2/eps) skip rates.
// Needs only d and eps to run; errors if the trajectory is too short.
ContractionEstimate estimate_absolute(const Trajectory& traj, double eps, double lambda);

// Data-dependent scan bound max(1, ceil(sqrt(N_min / d))) from the s = 1
// counts; the floor at 1 keeps the estimator defined when N_min < d.
std::int64_t adaptive_S(const SkipCounts& counts_s1, int d);

// Relative-error point estimator: adaptive scan bound, capped at m-1.
ContractionEstimate estimate_relative(const Trajectory& traj, double lambda);

MixingTimeEstimate estimate_mixing_time(const Trajectory& traj, double lambda);

// Occupancy-frequency plug-in N_min / num_steps at s = 1.
double pimin_plugin(const SkipCounts& counts_s1);

// Practical scan bound max(n, ceil(sqrt(m * min(pimin_lb, 1/d) / d))) given a
// lower confidence bound on the minimum stationary probability.
std::int64_t heuristic_S(std::int64_t m, int d, double pimin_lb, std::int64_t n = 3);

}  // namespace mixtime
