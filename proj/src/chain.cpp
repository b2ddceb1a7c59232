#include "mixtime/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mixtime {

namespace {

constexpr std::int64_t kMaxPowerIterations = 1'000'000;
constexpr double kStationaryStepTol = 1e-13;

}  // namespace

StateDistribution::StateDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        throw std::invalid_argument("distribution needs at least 2 states");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("distribution entries must be nonnegative");
        }
        sum += p;
    }
    if (!(std::abs(sum - 1.0) <= kStochasticTol)) {
        throw std::invalid_argument("distribution entries must sum to 1, got " +
                                    std::to_string(sum));
    }
}

StateDistribution StateDistribution::uniform(int d) {
    if (d < 2) throw std::invalid_argument("distribution needs at least 2 states");
    return StateDistribution(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

StateDistribution StateDistribution::point_mass(int d, int state) {
    if (d < 2) throw std::invalid_argument("distribution needs at least 2 states");
    if (state < 0 || state >= d) throw std::invalid_argument("point mass state out of range");
    std::vector<double> probs(static_cast<std::size_t>(d), 0.0);
    probs[static_cast<std::size_t>(state)] = 1.0;
    return StateDistribution(std::move(probs));
}

double StateDistribution::min_entry() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

MarkovKernel::MarkovKernel(int d, std::vector<double> row_major)
    : d_(d), data_(std::move(row_major)) {
    if (d_ < 2) throw std::invalid_argument("kernel needs at least 2 states");
    if (data_.size() != static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_)) {
        throw std::invalid_argument("kernel data size does not match d x d");
    }
    for (int i = 0; i < d_; ++i) {
        double sum = 0.0;
        for (int j = 0; j < d_; ++j) {
            const double entry = (*this)(i, j);
            if (!(entry >= 0.0 && entry <= 1.0 + kStochasticTol)) {
                throw std::invalid_argument("kernel entry outside [0, 1] at row " +
                                            std::to_string(i));
            }
            sum += entry;
        }
        if (!(std::abs(sum - 1.0) <= kStochasticTol)) {
            throw std::invalid_argument("kernel row " + std::to_string(i) +
                                        " sums to " + std::to_string(sum) + ", expected 1");
        }
    }
}

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
    std::vector<double> data;
    data.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw std::invalid_argument("kernel rows must form a square matrix");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return data;
}

}  // namespace

MarkovKernel::MarkovKernel(const std::vector<std::vector<double>>& rows)
    : MarkovKernel(static_cast<int>(rows.size()), flatten(rows)) {}

StateDistribution MarkovKernel::row_distribution(int i) const {
    if (i < 0 || i >= d_) throw std::invalid_argument("row index out of range");
    const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(i) * d_;
    return StateDistribution(std::vector<double>(begin, begin + d_));
}

std::vector<std::vector<double>> MarkovKernel::rows() const {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
        const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(i) * d_;
        out[static_cast<std::size_t>(i)].assign(begin, begin + d_);
    }
    return out;
}

double total_variation(const StateDistribution& p, const StateDistribution& q) {
    if (p.dim() != q.dim()) {
        throw std::invalid_argument("total variation requires equal dimensions");
    }
    double sum = 0.0;
    for (int i = 0; i < p.dim(); ++i) sum += std::abs(p[i] - q[i]);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

StateDistribution push_forward(const StateDistribution& mu, const MarkovKernel& kernel) {
    const int d = kernel.dim();
    if (mu.dim() != d) throw std::invalid_argument("distribution/kernel dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        const double w = mu[i];
        if (w == 0.0) continue;
        for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(j)] += w * kernel(i, j);
    }
    return StateDistribution(std::move(out));
}

MarkovKernel kernel_multiply(const MarkovKernel& a, const MarkovKernel& b) {
    const int d = a.dim();
    if (b.dim() != d) throw std::invalid_argument("kernel dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
            for (int j = 0; j < d; ++j) {
                out[row + static_cast<std::size_t>(j)] += aik * b(k, j);
            }
        }
    }
    for (int i = 0; i < d; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
        double sum = 0.0;
        for (int j = 0; j < d; ++j) sum += out[row + static_cast<std::size_t>(j)];
        if (std::abs(sum - 1.0) > kStochasticTol) {
            for (int j = 0; j < d; ++j) out[row + static_cast<std::size_t>(j)] /= sum;
        }
    }
    return MarkovKernel(d, std::move(out));
}

MarkovKernel kernel_power(const MarkovKernel& kernel, std::int64_t s) {
    if (s < 1) throw std::invalid_argument("kernel power requires s >= 1");
    MarkovKernel power = kernel;
    for (std::int64_t k = 2; k <= s; ++k) power = kernel_multiply(power, kernel);
    return power;
}

StateDistribution stationary_distribution(const MarkovKernel& kernel) {
    const int d = kernel.dim();
    std::vector<double> cur(static_cast<std::size_t>(d), 1.0 / d);
    std::vector<double> next(static_cast<std::size_t>(d), 0.0);
    for (std::int64_t iter = 0; iter < kMaxPowerIterations; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < d; ++i) {
            const double w = cur[static_cast<std::size_t>(i)];
            if (w == 0.0) continue;
            for (int j = 0; j < d; ++j) next[static_cast<std::size_t>(j)] += w * kernel(i, j);
        }
        double sum = 0.0;
        for (double x : next) sum += x;
        double step = 0.0;
        for (int j = 0; j < d; ++j) {
            next[static_cast<std::size_t>(j)] /= sum;
            step += std::abs(next[static_cast<std::size_t>(j)] - cur[static_cast<std::size_t>(j)]);
        }
        cur.swap(next);
        if (0.5 * step < kStationaryStepTol) return StateDistribution(std::move(cur));
    }
    throw ConvergenceError(
        "stationary distribution power iteration did not converge within 1e6 steps "
        "(input may not be ergodic)");
}

bool is_ergodic(const MarkovKernel& kernel) {
    const int d = kernel.dim();
    const std::size_t n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    std::vector<char> base(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) base[idx] = kernel.data()[idx] > 0.0 ? 1 : 0;

    const std::int64_t cap = wielandt_index(d);
    std::vector<char> reach = base;
    for (std::int64_t p = 1; p <= cap; ++p) {
        if (std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; })) return true;
        if (p == cap) break;
        std::vector<char> prod(n, 0);
        for (int i = 0; i < d; ++i) {
            const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
            for (int k = 0; k < d; ++k) {
                if (!reach[row + static_cast<std::size_t>(k)]) continue;
                const std::size_t brow = static_cast<std::size_t>(k) * static_cast<std::size_t>(d);
                for (int j = 0; j < d; ++j) {
                    prod[row + static_cast<std::size_t>(j)] |= base[brow + static_cast<std::size_t>(j)];
                }
            }
        }
        reach.swap(prod);
    }
    return false;
}

double dobrushin_coefficient(const MarkovKernel& kernel) {
    const int d = kernel.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            double sum = 0.0;
            for (int k = 0; k < d; ++k) sum += std::abs(kernel(i, k) - kernel(j, k));
            worst = std::max(worst, 0.5 * sum);
        }
    }
    return std::clamp(worst, 0.0, 1.0);
}

double beta_ratio(const StateDistribution& pi) {
    double lo = pi[0];
    double hi = pi[0];
    for (int i = 0; i < pi.dim(); ++i) {
        lo = std::min(lo, pi[i]);
        hi = std::max(hi, pi[i]);
    }
    if (!(lo > 0.0)) {
        throw std::invalid_argument("beta ratio requires strictly positive entries");
    }
    return hi / lo;
}

double max_row_l1_distance(const MarkovKernel& a, const MarkovKernel& b) {
    const int d = a.dim();
    if (b.dim() != d) throw std::invalid_argument("kernel dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) sum += std::abs(a(i, j) - b(i, j));
        worst = std::max(worst, sum);
    }
    return worst;
}

std::int64_t wielandt_index(int d) {
    const std::int64_t n = d - 1;
    return n * n + 1;
}

}  // namespace mixtime
