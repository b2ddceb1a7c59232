#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mixtime {

// Tolerance used when validating that probability vectors and kernel rows
// sum to one.
inline constexpr double kStochasticTol = 1e-12;

// An iterative routine hit its iteration cap, or a generator exhausted its
// retry budget. The CLI reports these with exit code 3.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Probability vector over a finite state space, indexed 0..d-1.
// Entries must be nonnegative and sum to one within kStochasticTol; d >= 2.
class StateDistribution {
  public:
    explicit StateDistribution(std::vector<double> probs);

    static StateDistribution uniform(int d);
    static StateDistribution point_mass(int d, int state);

    int dim() const { return static_cast<int>(probs_.size()); }
    double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return probs_; }
    double min_entry() const;

  private:
    std::vector<double> probs_;
};

// Row-stochastic d x d transition matrix, stored row-major.
// Construction rejects matrices whose entries leave [0, 1] or whose rows do
// not sum to one within kStochasticTol; nothing is renormalized silently.
class MarkovKernel {
  public:
    MarkovKernel(int d, std::vector<double> row_major);
    explicit MarkovKernel(const std::vector<std::vector<double>>& rows);

    int dim() const { return d_; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) +
                     static_cast<std::size_t>(j)];
    }
    StateDistribution row_distribution(int i) const;
    std::vector<std::vector<double>> rows() const;
    const std::vector<double>& data() const { return data_; }

  private:
    int d_;
    std::vector<double> data_;
};

// Half the l1 distance between two distributions of equal dimension; in [0, 1].
double total_variation(const StateDistribution& p, const StateDistribution& q);

// One-step push-forward mu * M.
StateDistribution push_forward(const StateDistribution& mu, const MarkovKernel& kernel);

// Matrix product of two kernels on the same state space. Rows whose sums have
// drifted from one by more than kStochasticTol are renormalized.
MarkovKernel kernel_multiply(const MarkovKernel& a, const MarkovKernel& b);

// M^s by repeated multiplication, s >= 1. M^1 is M itself, bit for bit.
MarkovKernel kernel_power(const MarkovKernel& kernel, std::int64_t s);

// Stationary distribution of an ergodic kernel, found by power iteration from
// the uniform distribution until successive iterates are within 1e-13 in total
// variation (capped at 1e6 steps). The returned pi satisfies
// total_variation(pi * M, pi) <= 1e-10.
StateDistribution stationary_distribution(const MarkovKernel& kernel);

// Primitivity test on the boolean support matrix: true iff some power up to
// the Wielandt index (d-1)^2 + 1 is entrywise positive.
bool is_ergodic(const MarkovKernel& kernel);

// Largest total variation distance between any two rows of the kernel.
double dobrushin_coefficient(const MarkovKernel& kernel);

// max_{i,j} pi(i)/pi(j); requires strictly positive entries. Diagnostic for
// how far pi is from uniform.
double beta_ratio(const StateDistribution& pi);

// l_infinity operator distance: largest row-wise l1 distance between kernels.
double max_row_l1_distance(const MarkovKernel& a, const MarkovKernel& b);

// (d-1)^2 + 1, the power by which a primitive d x d matrix must be positive.
std::int64_t wielandt_index(int d);

}  // namespace mixtime
