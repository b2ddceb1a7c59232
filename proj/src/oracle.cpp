#include "mixtime/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace mixtime {

namespace {

constexpr std::int64_t kMixingTimeCap = 10'000'000;
constexpr std::int64_t kScanCap = 1'000'000;

void check_xi(double xi) {
    if (!(xi > 0.0 && xi < 0.5)) throw std::invalid_argument("xi must lie in (0, 1/2)");
}

double worst_row_distance(const MarkovKernel& power, const StateDistribution& pi) {
    double worst = 0.0;
    for (int i = 0; i < power.dim(); ++i) {
        worst = std::max(worst, total_variation(power.row_distribution(i), pi));
    }
    return worst;
}

}  // namespace

double distance_to_stationarity(const MarkovKernel& kernel, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("distance to stationarity requires t >= 1");
    const StateDistribution pi = stationary_distribution(kernel);
    return worst_row_distance(kernel_power(kernel, t), pi);
}

std::int64_t exact_mixing_time(const MarkovKernel& kernel, double xi) {
    check_xi(xi);
    const StateDistribution pi = stationary_distribution(kernel);
    MarkovKernel power = kernel;
    for (std::int64_t t = 1; t <= kMixingTimeCap; ++t) {
        if (t > 1) power = kernel_multiply(power, kernel);
        if (worst_row_distance(power, pi) < xi) return t;
    }
    throw ConvergenceError("mixing time exceeded the 1e7-step cap (input may not be ergodic)");
}

double exact_kappa_s(const MarkovKernel& kernel, std::int64_t s) {
    return dobrushin_coefficient(kernel_power(kernel, s));
}

ExactContraction exact_generalized_contraction(const MarkovKernel& kernel) {
    const std::int64_t wielandt = wielandt_index(kernel.dim());
    ExactContraction out;
    double best = -1.0;
    std::int64_t best_s = 0;
    MarkovKernel power = kernel;
    std::int64_t s = 1;
    while (true) {
        const double kappa_s = dobrushin_coefficient(power);
        const double rate = (1.0 - kappa_s) / static_cast<double>(s);
        out.per_s.push_back({s, kappa_s, rate});
        if (rate > best) {
            best = rate;
            best_s = s;
        }
        const std::int64_t next = s + 1;
        if (best > 0.0 &&
            next > std::max(wielandt, static_cast<std::int64_t>(std::ceil(1.0 / best)))) {
            break;
        }
        if (next > kScanCap) {
            throw ConvergenceError(
                "generalized contraction scan exceeded 1e6 skips (input may not be ergodic)");
        }
        power = kernel_multiply(power, kernel);
        s = next;
    }
    out.kappa_gen = 1.0 - best;
    out.k_gen = best_s;
    out.scanned_up_to = s;
    return out;
}

SandwichBounds sandwich_bounds(const MarkovKernel& kernel, double xi) {
    check_xi(xi);
    const ExactContraction ec = exact_generalized_contraction(kernel);
    SandwichBounds out;
    out.tmix = exact_mixing_time(kernel, xi);
    const double gap = 1.0 - ec.kappa_gen;
    out.lower = (1.0 - 2.0 * xi) / gap;
    out.upper = (1.0 + std::log(1.0 / xi)) / gap;
    out.holds = out.lower <= static_cast<double>(out.tmix) &&
                static_cast<double>(out.tmix) <= out.upper;
    return out;
}

std::int64_t skipped_mixing_time(const MarkovKernel& kernel, std::int64_t s, double xi) {
    if (s < 1) throw std::invalid_argument("skip rate s must be >= 1");
    return exact_mixing_time(kernel_power(kernel, s), xi);
}

}  // namespace mixtime
