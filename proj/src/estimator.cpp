#include "mixtime/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mixtime {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("smoothing lambda must be >= 0");
}

// Largest double below 1; keeps clamped intervals inside [0, 1).
double upper_cap() { return std::nextafter(1.0, 0.0); }

}  // namespace

SkipCounts accumulate_counts(const Trajectory& traj, std::int64_t s) {
    const std::int64_t m = traj.length();
    if (s < 1 || s > m - 1) throw std::invalid_argument("skip rate s must satisfy 1 <= s <= m-1");
    const int d = traj.dim();
    SkipCounts counts;
    counts.s = s;
    counts.d = d;
    counts.num_steps = (m - 1) / s;
    counts.visits.assign(static_cast<std::size_t>(d), 0);
    counts.transitions.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0);
    for (std::int64_t t = 0; t < counts.num_steps; ++t) {
        const int i = traj[t * s];
        const int j = traj[(t + 1) * s];
        ++counts.visits[static_cast<std::size_t>(i)];
        ++counts.transitions[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                             static_cast<std::size_t>(j)];
    }
    counts.n_min = *std::min_element(counts.visits.begin(), counts.visits.end());
    return counts;
}

EmpiricalKernel empirical_kernel(const SkipCounts& counts, double lambda) {
    check_lambda(lambda);
    const int d = counts.d;
    std::vector<double> data(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    std::vector<bool> visited(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const double n_i = static_cast<double>(counts.visit(i));
        visited[static_cast<std::size_t>(i)] = counts.visit(i) > 0;
        for (int j = 0; j < d; ++j) {
            double p;
            if (lambda > 0.0) {
                p = (static_cast<double>(counts.transition(i, j)) + lambda) / (n_i + d * lambda);
            } else if (counts.visit(i) > 0) {
                p = static_cast<double>(counts.transition(i, j)) / n_i;
            } else {
                p = 1.0 / d;  // uniform fallback for an unvisited state
            }
            data[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
                 static_cast<std::size_t>(j)] = p;
        }
    }
    return EmpiricalKernel{MarkovKernel(d, std::move(data)), lambda, std::move(visited)};
}

double empirical_dobrushin(const EmpiricalKernel& ek) {
    return dobrushin_coefficient(ek.kernel);
}

ContractionEstimate estimate_kappa_gen(const Trajectory& traj, std::int64_t S, double lambda) {
    const std::int64_t m = traj.length();
    if (S < 1 || S > m - 1) throw std::invalid_argument("scan bound S must satisfy 1 <= S <= m-1");
    check_lambda(lambda);
    ContractionEstimate est;
    est.S = S;
    est.per_s.reserve(static_cast<std::size_t>(S));
    double best = -1.0;
    for (std::int64_t s = 1; s <= S; ++s) {
        const SkipCounts counts = accumulate_counts(traj, s);
        const double kappa_s = empirical_dobrushin(empirical_kernel(counts, lambda));
        const double rate = (1.0 - kappa_s) / static_cast<double>(s);
        est.per_s.push_back({s, kappa_s, rate});
        if (rate > best) {
            best = rate;
            est.arg_s = s;
        }
    }
    est.kappa_hat = 1.0 - best;
    return est;
}

double solve_log_factor(std::int64_t m, std::int64_t r, int d, std::int64_t S, double delta) {
    if (m < 2) throw std::invalid_argument("solve_log_factor requires m >= 2");
    if (r < 1 || S < 1 || d < 2 || !(delta > 0.0)) {
        throw std::invalid_argument("solve_log_factor requires r >= 1, S >= 1, d >= 2, delta > 0");
    }
    const double target = delta / (static_cast<double>(d) * static_cast<double>(S));
    const auto bound = [&](double t) {
        const double log_arg = 2.0 * static_cast<double>(m) / (t * static_cast<double>(r));
        const double pos_ceil = std::max(0.0, std::ceil(std::log(log_arg)));
        return (1.0 + pos_ceil) * static_cast<double>(d + 1) * std::exp(-t);
    };
    double lo = 1.0;
    if (bound(lo) <= target) return 1.0;
    double hi = 2.0;
    while (bound(hi) > target) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (bound(mid) <= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

ConfidenceInterval confidence_interval(const Trajectory& traj, std::int64_t S, double delta,
                                       double lambda) {
    const std::int64_t m = traj.length();
    if (S < 1 || S > m - 1) throw std::invalid_argument("scan bound S must satisfy 1 <= S <= m-1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    check_lambda(lambda);
    const int d = traj.dim();

    ConfidenceInterval ci;
    ci.delta = delta;
    ci.per_s_terms.reserve(static_cast<std::size_t>(S));
    double best_rate = -1.0;
    double max_term = 0.0;
    for (std::int64_t s = 1; s <= S; ++s) {
        const SkipCounts counts = accumulate_counts(traj, s);
        const double kappa_s = empirical_dobrushin(empirical_kernel(counts, lambda));
        best_rate = std::max(best_rate, (1.0 - kappa_s) / static_cast<double>(s));

        const double log_factor = solve_log_factor(m, s, d, S, delta);
        double term;
        if (counts.n_min > 0) {
            term = (4.0 / static_cast<double>(s)) * log_factor *
                   std::sqrt(static_cast<double>(d) / static_cast<double>(counts.n_min));
        } else {
            term = std::numeric_limits<double>::infinity();
            ci.degenerate = true;
        }
        max_term = std::max(max_term, term);
        ci.per_s_terms.push_back({s, log_factor, counts.n_min, term});
    }
    ci.center = 1.0 - best_rate;
    ci.width = 1.0 / static_cast<double>(S) + max_term;
    if (ci.degenerate) {
        ci.lower = 0.0;
        ci.upper = upper_cap();
    } else {
        ci.lower = std::clamp(ci.center - ci.width, 0.0, upper_cap());
        ci.upper = std::clamp(ci.center + ci.width, 0.0, upper_cap());
    }
    return ci;
}

ContractionEstimate estimate_absolute(const Trajectory& traj, double eps, double lambda) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
    const std::int64_t S = static_cast<std::int64_t>(std::ceil(2.0 / eps));
    if (S > traj.length() - 1) {
        throw std::invalid_argument("trajectory too short for eps=" + std::to_string(eps) +
                                    ": need m >= " + std::to_string(S + 1));
    }
    return estimate_kappa_gen(traj, S, lambda);
}

std::int64_t adaptive_S(const SkipCounts& counts_s1, int d) {
    if (counts_s1.s != 1) throw std::invalid_argument("adaptive_S expects counts at s = 1");
    if (d < 2) throw std::invalid_argument("adaptive_S requires d >= 2");
    const double ratio = static_cast<double>(counts_s1.n_min) / static_cast<double>(d);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::sqrt(ratio))));
}

ContractionEstimate estimate_relative(const Trajectory& traj, double lambda) {
    const SkipCounts counts = accumulate_counts(traj, 1);
    const std::int64_t S = std::min(adaptive_S(counts, traj.dim()), traj.length() - 1);
    return estimate_kappa_gen(traj, S, lambda);
}

MixingTimeEstimate estimate_mixing_time(const Trajectory& traj, double lambda) {
    MixingTimeEstimate out;
    out.contraction = estimate_relative(traj, lambda);
    if (out.contraction.kappa_hat >= 1.0) {
        out.insufficient_data = true;
        out.t_hat_real = std::numeric_limits<double>::infinity();
        out.t_hat_int = 0;
        return out;
    }
    out.t_hat_real = 1.0 / (1.0 - out.contraction.kappa_hat);
    constexpr double kMaxInt = 9.0e18;
    out.t_hat_int = out.t_hat_real >= kMaxInt
                        ? std::numeric_limits<std::int64_t>::max()
                        : static_cast<std::int64_t>(std::ceil(out.t_hat_real));
    return out;
}

double pimin_plugin(const SkipCounts& counts_s1) {
    if (counts_s1.s != 1) throw std::invalid_argument("pimin_plugin expects counts at s = 1");
    if (counts_s1.num_steps < 1) throw std::invalid_argument("pimin_plugin requires num_steps >= 1");
    return static_cast<double>(counts_s1.n_min) / static_cast<double>(counts_s1.num_steps);
}

std::int64_t heuristic_S(std::int64_t m, int d, double pimin_lb, std::int64_t n) {
    if (m < 2) throw std::invalid_argument("heuristic_S requires m >= 2");
    if (d < 2) throw std::invalid_argument("heuristic_S requires d >= 2");
    if (!(pimin_lb > 0.0 && pimin_lb <= 1.0)) {
        throw std::invalid_argument("pimin_lb must lie in (0, 1]");
    }
    if (n < 1) throw std::invalid_argument("heuristic_S requires n >= 1");
    const double balanced = std::sqrt(static_cast<double>(m) *
                                      std::min(pimin_lb, 1.0 / static_cast<double>(d)) /
                                      static_cast<double>(d));
    return std::max(n, static_cast<std::int64_t>(std::ceil(balanced)));
}

}  // namespace mixtime
