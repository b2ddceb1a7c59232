#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mixtime/chain.hpp"
#include "mixtime/estimator.hpp"
#include "mixtime/rng.hpp"

namespace mixtime {

enum class ChainFamily {
    RandomDirichlet,   // each row drawn from a symmetric Dirichlet(alpha)
    LazyCycle,         // hold with probability h, otherwise step to a neighbor
    BiasedCycle,       // forward step with probability p, hold otherwise
    ThreeStateFunnel,  // fixed kernel [[0,1,0],[0,0,1],[.5,.5,0]], kappa_1 = 1
    RankOne,           // all rows equal
    TwoState,          // [[1-p, p], [q, 1-q]]
};

ChainFamily parse_family(const std::string& name);
std::string family_name(ChainFamily family);

struct ChainSpec {
    ChainFamily family = ChainFamily::RandomDirichlet;
    int d = 2;
    std::vector<double> params;  // family-specific, with documented defaults
    RandomSeed seed;
};

// Returns an ergodic kernel for the requested family; redraws up to 100 times
// before giving up with a ConvergenceError.
MarkovKernel generate_chain(const ChainSpec& spec);

enum class ScanMode { Fixed, Heuristic, Adaptive };

enum class StartDistribution { Stationary, Uniform, Point };

struct ExperimentConfig {
    ChainSpec spec;
    std::int64_t m = 10'000;
    int replicates = 1;
    double delta = 0.1;
    double eps = 0.1;
    double lambda = 0.0;
    double xi = 0.25;
    ScanMode s_mode = ScanMode::Adaptive;
    std::int64_t S = 10;  // used by ScanMode::Fixed
    std::int64_t heuristic_n = 3;
    StartDistribution start = StartDistribution::Stationary;
    int start_state = 0;
    RandomSeed master_seed;
    std::vector<std::int64_t> m_grid;  // error-curve experiments
    std::vector<std::int64_t> s_list;  // visit-concentration experiments
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Exact quantities the estimators are judged against.
struct OracleTruth {
    double kappa_gen = 0.0;
    std::int64_t k_gen = 0;
    std::int64_t tmix = 0;
    double pimin = 0.0;
};

struct CoverageRecord {
    int replicate = 0;
    std::int64_t S = 0;
    double kappa_hat = 0.0;
    ConfidenceInterval ci;
    double t_hat_real = 0.0;
    std::int64_t t_hat_int = 0;
    bool insufficient_data = false;
    bool covered = false;      // kappa_gen inside the interval
    bool bracket_hit = false;  // t_hat_real inside [tmix/3, 3*tmix]
};

struct CoverageReport {
    OracleTruth truth;
    std::vector<CoverageRecord> records;
    double coverage_rate = 0.0;
    double median_abs_error = 0.0;
    double bracket_rate = 0.0;
};

// One trajectory per replicate; per-replicate interval, point estimate, and
// mixing-time estimate, all judged against the oracle. Deterministic given
// the master seed.
CoverageReport run_coverage(const ExperimentConfig& config);

struct ErrorCurvePoint {
    std::int64_t m = 0;
    double median_abs_error = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

std::vector<ErrorCurvePoint> run_error_curve(const ExperimentConfig& config,
                                             const std::vector<std::int64_t>& m_grid);

struct VisitConcentrationPoint {
    std::int64_t s = 0;
    double bad_event_rate = 0.0;  // fraction with N_min^(s) < 0.5*floor((m-1)/s)*pimin
    int replicates = 0;
};

// Stationary start, matching the event's definition.
std::vector<VisitConcentrationPoint> run_visit_concentration(
    const ExperimentConfig& config, const std::vector<std::int64_t>& s_list);

void write_coverage_csv(const CoverageReport& report, const std::filesystem::path& path);
void write_error_curve_csv(const std::vector<ErrorCurvePoint>& points,
                           const std::filesystem::path& path);
void write_visits_csv(const std::vector<VisitConcentrationPoint>& points,
                      const std::filesystem::path& path);

// Shortest round-trip decimal formatting; keeps report files byte-stable.
std::string format_double(double x);

}  // namespace mixtime
