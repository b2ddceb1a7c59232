#include "mixtime/sampler.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace mixtime {

Trajectory::Trajectory(std::vector<int> states, int d) : states_(std::move(states)), d_(d) {
    if (d_ < 2) throw std::invalid_argument("trajectory needs a state space with d >= 2");
    if (states_.size() < 2) throw std::invalid_argument("trajectory needs length m >= 2");
    for (int s : states_) {
        if (s < 0 || s >= d_) throw std::invalid_argument("trajectory state index out of range");
    }
}

namespace {

// First index j with u < cdf[j], clamped to the last state.
int draw_from_cdf(const double* cdf, int d, double u) {
    const double* it = std::upper_bound(cdf, cdf + d, u);
    const int idx = static_cast<int>(it - cdf);
    return std::min(idx, d - 1);
}

}  // namespace

Trajectory sample_trajectory(const MarkovKernel& kernel, const StateDistribution& initial,
                             std::int64_t m, RandomSeed seed) {
    const int d = kernel.dim();
    if (initial.dim() != d) throw std::invalid_argument("initial distribution dimension mismatch");
    if (m < 2) throw std::invalid_argument("trajectory length m must be at least 2");

    std::vector<double> initial_cdf(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
        acc += initial[j];
        initial_cdf[static_cast<std::size_t>(j)] = acc;
    }
    std::vector<double> row_cdf(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        acc = 0.0;
        for (int j = 0; j < d; ++j) {
            acc += kernel(i, j);
            row_cdf[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] = acc;
        }
    }

    CounterRng rng(seed);
    std::vector<int> states(static_cast<std::size_t>(m));
    states[0] = draw_from_cdf(initial_cdf.data(), d, rng.next_unit());
    for (std::int64_t t = 1; t < m; ++t) {
        const int prev = states[static_cast<std::size_t>(t - 1)];
        states[static_cast<std::size_t>(t)] =
            draw_from_cdf(row_cdf.data() + static_cast<std::size_t>(prev) * d, d, rng.next_unit());
    }
    return Trajectory(std::move(states), d);
}

Trajectory skip_subsample(const Trajectory& traj, std::int64_t s) {
    const std::int64_t m = traj.length();
    if (s < 1 || s > m - 1) throw std::invalid_argument("skip rate s must satisfy 1 <= s <= m-1");
    const std::int64_t steps = (m - 1) / s;
    std::vector<int> states;
    states.reserve(static_cast<std::size_t>(steps + 1));
    for (std::int64_t t = 0; t <= steps; ++t) states.push_back(traj[t * s]);
    return Trajectory(std::move(states), traj.dim());
}

void save_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write trajectory file: " + path.string());
    out << "d=" << traj.dim() << " m=" << traj.length() << "\n";
    for (std::int64_t t = 0; t < traj.length(); ++t) {
        if (t > 0) out << ' ';
        out << traj[t];
    }
    out << "\n";
}

Trajectory load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open trajectory file: " + path.string());
    std::string header;
    std::getline(in, header);
    int d = 0;
    long long m = 0;
    if (std::sscanf(header.c_str(), "d=%d m=%lld", &d, &m) != 2) {
        throw std::invalid_argument("bad trajectory header, expected \"d=<int> m=<int>\": " +
                                    header);
    }
    if (m < 2) throw std::invalid_argument("trajectory header declares m < 2");
    std::vector<int> states;
    states.reserve(static_cast<std::size_t>(m));
    int state = 0;
    while (static_cast<long long>(states.size()) < m && in >> state) states.push_back(state);
    if (static_cast<long long>(states.size()) != m) {
        throw std::invalid_argument("trajectory file ended before m states were read");
    }
    return Trajectory(std::move(states), d);
}

}  // namespace mixtime
