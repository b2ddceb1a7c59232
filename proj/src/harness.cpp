#include "mixtime/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mixtime/oracle.hpp"

namespace mixtime {

namespace {

double sample_normal(CounterRng& rng) {
    const double u1 = 1.0 - rng.next_unit();  // (0, 1]
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

// Marsaglia-Tsang, with the boost trick for alpha < 1.
double sample_gamma(CounterRng& rng, double alpha) {
    if (alpha < 1.0) {
        const double boosted = sample_gamma(rng, alpha + 1.0);
        const double u = 1.0 - rng.next_unit();
        return boosted * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        const double x = sample_normal(rng);
        const double base = 1.0 + c * x;
        if (base <= 0.0) continue;
        const double v = base * base * base;
        const double u = 1.0 - rng.next_unit();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

std::vector<double> sample_dirichlet_row(CounterRng& rng, int d, double alpha) {
    std::vector<double> row(static_cast<std::size_t>(d));
    double sum = 0.0;
    for (auto& x : row) {
        x = sample_gamma(rng, alpha);
        sum += x;
    }
    for (auto& x : row) x /= sum;
    return row;
}

double param_or(const std::vector<double>& params, std::size_t idx, double fallback) {
    return params.size() > idx ? params[idx] : fallback;
}

MarkovKernel build_family(const ChainSpec& spec, CounterRng& rng) {
    const int d = spec.d;
    switch (spec.family) {
        case ChainFamily::RandomDirichlet: {
            const double alpha = param_or(spec.params, 0, 1.0);
            if (!(alpha > 0.0)) throw std::invalid_argument("dirichlet alpha must be > 0");
            std::vector<std::vector<double>> rows;
            rows.reserve(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) rows.push_back(sample_dirichlet_row(rng, d, alpha));
            return MarkovKernel(rows);
        }
        case ChainFamily::LazyCycle: {
            const double hold = param_or(spec.params, 0, 0.5);
            if (!(hold > 0.0 && hold < 1.0)) {
                throw std::invalid_argument("lazy-cycle hold probability must lie in (0, 1)");
            }
            std::vector<std::vector<double>> rows(
                static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
            for (int i = 0; i < d; ++i) {
                rows[i][i] += hold;
                rows[i][static_cast<std::size_t>((i + 1) % d)] += (1.0 - hold) / 2.0;
                rows[i][static_cast<std::size_t>((i + d - 1) % d)] += (1.0 - hold) / 2.0;
            }
            return MarkovKernel(rows);
        }
        case ChainFamily::BiasedCycle: {
            const double p = param_or(spec.params, 0, 0.9);
            if (!(p > 0.0 && p < 1.0)) {
                throw std::invalid_argument("biased-cycle step probability must lie in (0, 1)");
            }
            std::vector<std::vector<double>> rows(
                static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
            for (int i = 0; i < d; ++i) {
                rows[i][i] = 1.0 - p;
                rows[i][static_cast<std::size_t>((i + 1) % d)] += p;
            }
            return MarkovKernel(rows);
        }
        case ChainFamily::ThreeStateFunnel: {
            if (d != 3) throw std::invalid_argument("three-state-funnel requires d = 3");
            return MarkovKernel({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.5, 0.0}});
        }
        case ChainFamily::RankOne: {
            std::vector<double> row;
            if (!spec.params.empty()) {
                if (static_cast<int>(spec.params.size()) != d) {
                    throw std::invalid_argument("rank-one params must give one probability per state");
                }
                row = spec.params;
            } else {
                row = sample_dirichlet_row(rng, d, 1.0);
            }
            StateDistribution check{std::vector<double>(row)};  // enforce simplex membership
            (void)check;
            return MarkovKernel(std::vector<std::vector<double>>(static_cast<std::size_t>(d), row));
        }
        case ChainFamily::TwoState: {
            if (d != 2) throw std::invalid_argument("two-state requires d = 2");
            const double p = param_or(spec.params, 0, 0.25);
            const double q = param_or(spec.params, 1, 0.25);
            if (!(p > 0.0 && p <= 1.0 && q > 0.0 && q <= 1.0)) {
                throw std::invalid_argument("two-state probabilities must lie in (0, 1]");
            }
            return MarkovKernel({{1.0 - p, p}, {q, 1.0 - q}});
        }
    }
    throw std::invalid_argument("unknown chain family");
}

StateDistribution start_distribution(const ExperimentConfig& config, const StateDistribution& pi) {
    switch (config.start) {
        case StartDistribution::Stationary: return pi;
        case StartDistribution::Uniform: return StateDistribution::uniform(config.spec.d);
        case StartDistribution::Point:
            return StateDistribution::point_mass(config.spec.d, config.start_state);
    }
    throw std::invalid_argument("unknown start distribution");
}

std::int64_t choose_scan_bound(const ExperimentConfig& config, const Trajectory& traj) {
    const std::int64_t m = traj.length();
    std::int64_t S = 1;
    switch (config.s_mode) {
        case ScanMode::Fixed:
            S = config.S;
            break;
        case ScanMode::Adaptive:
            S = adaptive_S(accumulate_counts(traj, 1), traj.dim());
            break;
        case ScanMode::Heuristic: {
            const SkipCounts counts = accumulate_counts(traj, 1);
            // Plug-in lower bound, floored at one observed step so it stays positive.
            const double pimin_lb =
                std::max(pimin_plugin(counts), 1.0 / static_cast<double>(counts.num_steps));
            S = heuristic_S(m, traj.dim(), std::min(pimin_lb, 1.0), config.heuristic_n);
            break;
        }
    }
    return std::clamp<std::int64_t>(S, 1, m - 1);
}

ContractionEstimate estimate_with_mode(const ExperimentConfig& config, const Trajectory& traj) {
    if (config.s_mode == ScanMode::Adaptive) return estimate_relative(traj, config.lambda);
    return estimate_kappa_gen(traj, choose_scan_bound(config, traj), config.lambda);
}

double percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values.front();
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

ChainFamily parse_family(const std::string& name) {
    if (name == "random-dirichlet") return ChainFamily::RandomDirichlet;
    if (name == "lazy-cycle") return ChainFamily::LazyCycle;
    if (name == "biased-cycle") return ChainFamily::BiasedCycle;
    if (name == "three-state-funnel") return ChainFamily::ThreeStateFunnel;
    if (name == "rank-one") return ChainFamily::RankOne;
    if (name == "two-state") return ChainFamily::TwoState;
    throw std::invalid_argument("unknown chain family: " + name);
}

std::string family_name(ChainFamily family) {
    switch (family) {
        case ChainFamily::RandomDirichlet: return "random-dirichlet";
        case ChainFamily::LazyCycle: return "lazy-cycle";
        case ChainFamily::BiasedCycle: return "biased-cycle";
        case ChainFamily::ThreeStateFunnel: return "three-state-funnel";
        case ChainFamily::RankOne: return "rank-one";
        case ChainFamily::TwoState: return "two-state";
    }
    return "unknown";
}

MarkovKernel generate_chain(const ChainSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("chain spec requires d >= 2");
    CounterRng master(spec.seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        CounterRng rng = master.substream(static_cast<std::uint64_t>(attempt));
        MarkovKernel kernel = build_family(spec, rng);
        if (is_ergodic(kernel)) return kernel;
    }
    throw ConvergenceError("chain generation failed: family " + family_name(spec.family) +
                           " produced no ergodic kernel in 100 attempts");
}

ExperimentConfig parse_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        if (!doc.contains("chain") || !doc["chain"].contains("family")) {
            throw std::invalid_argument("config needs a \"chain\" object with a \"family\"");
        }
        const auto& chain = doc["chain"];
        config.spec.family = parse_family(chain["family"].get<std::string>());
        config.spec.d = chain.value("d", 2);
        config.spec.params = chain.value("params", std::vector<double>{});
        config.spec.seed = RandomSeed{chain.value("seed", std::uint64_t{0})};

        config.m = doc.value("m", std::int64_t{10'000});
        config.replicates = doc.value("replicates", 1);
        config.delta = doc.value("delta", 0.1);
        config.eps = doc.value("eps", 0.1);
        config.lambda = doc.value("lambda", 0.0);
        config.xi = doc.value("xi", 0.25);
        config.S = doc.value("S", std::int64_t{10});
        config.heuristic_n = doc.value("heuristic_n", std::int64_t{3});
        config.master_seed = RandomSeed{doc.value("master_seed", std::uint64_t{0})};
        config.m_grid = doc.value("m_grid", std::vector<std::int64_t>{});
        config.s_list = doc.value("s_list", std::vector<std::int64_t>{});

        const std::string mode = doc.value("S_mode", std::string("adaptive"));
        if (mode == "fixed") {
            config.s_mode = ScanMode::Fixed;
        } else if (mode == "heuristic") {
            config.s_mode = ScanMode::Heuristic;
        } else if (mode == "adaptive") {
            config.s_mode = ScanMode::Adaptive;
        } else {
            throw std::invalid_argument("S_mode must be fixed, heuristic, or adaptive");
        }

        const std::string mu = doc.value("mu", std::string("stationary"));
        if (mu == "stationary") {
            config.start = StartDistribution::Stationary;
        } else if (mu == "uniform") {
            config.start = StartDistribution::Uniform;
        } else if (mu.rfind("point:", 0) == 0) {
            config.start = StartDistribution::Point;
            config.start_state = std::stoi(mu.substr(6));
        } else {
            throw std::invalid_argument("mu must be stationary, uniform, or point:<i>");
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed config: ") + e.what());
    }
    if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (config.m < 2) throw std::invalid_argument("m must be >= 2");
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (!(config.xi > 0.0 && config.xi < 0.5)) throw std::invalid_argument("xi must lie in (0, 1/2)");
    if (!(config.lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

CoverageReport run_coverage(const ExperimentConfig& config) {
    const MarkovKernel kernel = generate_chain(config.spec);
    const ExactContraction ec = exact_generalized_contraction(kernel);
    const StateDistribution pi = stationary_distribution(kernel);

    CoverageReport report;
    report.truth = {ec.kappa_gen, ec.k_gen, exact_mixing_time(kernel, config.xi), pi.min_entry()};

    const StateDistribution start = start_distribution(config, pi);
    std::vector<double> abs_errors;
    abs_errors.reserve(static_cast<std::size_t>(config.replicates));
    int covered = 0;
    int bracket_hits = 0;
    for (int rep = 0; rep < config.replicates; ++rep) {
        const RandomSeed seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(rep));
        const Trajectory traj = sample_trajectory(kernel, start, config.m, seed);

        CoverageRecord rec;
        rec.replicate = rep;
        rec.S = choose_scan_bound(config, traj);
        rec.ci = confidence_interval(traj, rec.S, config.delta, config.lambda);
        rec.kappa_hat = rec.ci.center;

        const MixingTimeEstimate mt = estimate_mixing_time(traj, config.lambda);
        rec.t_hat_real = mt.t_hat_real;
        rec.t_hat_int = mt.t_hat_int;
        rec.insufficient_data = mt.insufficient_data;

        rec.covered = rec.ci.lower <= report.truth.kappa_gen &&
                      report.truth.kappa_gen <= rec.ci.upper;
        const double tmix = static_cast<double>(report.truth.tmix);
        rec.bracket_hit = !mt.insufficient_data && rec.t_hat_real >= tmix / 3.0 &&
                          rec.t_hat_real <= 3.0 * tmix;

        covered += rec.covered ? 1 : 0;
        bracket_hits += rec.bracket_hit ? 1 : 0;
        abs_errors.push_back(std::abs(rec.kappa_hat - report.truth.kappa_gen));
        report.records.push_back(std::move(rec));
    }
    report.coverage_rate = static_cast<double>(covered) / config.replicates;
    report.bracket_rate = static_cast<double>(bracket_hits) / config.replicates;
    report.median_abs_error = percentile(std::move(abs_errors), 0.5);
    return report;
}

std::vector<ErrorCurvePoint> run_error_curve(const ExperimentConfig& config,
                                             const std::vector<std::int64_t>& m_grid) {
    if (m_grid.empty()) throw std::invalid_argument("error curve needs a nonempty m grid");
    const MarkovKernel kernel = generate_chain(config.spec);
    const double kappa_gen = exact_generalized_contraction(kernel).kappa_gen;
    const StateDistribution pi = stationary_distribution(kernel);
    const StateDistribution start = start_distribution(config, pi);

    std::vector<ErrorCurvePoint> points;
    points.reserve(m_grid.size());
    for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
        const std::int64_t m = m_grid[gi];
        if (m < 2) throw std::invalid_argument("error curve m values must be >= 2");
        const RandomSeed grid_seed = derive_seed(config.master_seed, gi);
        std::vector<double> errors;
        errors.reserve(static_cast<std::size_t>(config.replicates));
        for (int rep = 0; rep < config.replicates; ++rep) {
            ExperimentConfig local = config;
            local.m = m;
            const Trajectory traj = sample_trajectory(
                kernel, start, m, derive_seed(grid_seed, static_cast<std::uint64_t>(rep)));
            errors.push_back(std::abs(estimate_with_mode(local, traj).kappa_hat - kappa_gen));
        }
        points.push_back({m, percentile(errors, 0.5), percentile(errors, 0.25),
                          percentile(errors, 0.75)});
    }
    return points;
}

std::vector<VisitConcentrationPoint> run_visit_concentration(
    const ExperimentConfig& config, const std::vector<std::int64_t>& s_list) {
    if (s_list.empty()) throw std::invalid_argument("visit concentration needs a nonempty s list");
    const MarkovKernel kernel = generate_chain(config.spec);
    const StateDistribution pi = stationary_distribution(kernel);
    const double pimin = pi.min_entry();

    std::vector<std::int64_t> bad(s_list.size(), 0);
    for (int rep = 0; rep < config.replicates; ++rep) {
        // Stationary start: the event is defined under the stationary law.
        const Trajectory traj = sample_trajectory(
            kernel, pi, config.m, derive_seed(config.master_seed, static_cast<std::uint64_t>(rep)));
        for (std::size_t si = 0; si < s_list.size(); ++si) {
            const SkipCounts counts = accumulate_counts(traj, s_list[si]);
            const double threshold = 0.5 * static_cast<double>(counts.num_steps) * pimin;
            if (static_cast<double>(counts.n_min) < threshold) ++bad[si];
        }
    }
    std::vector<VisitConcentrationPoint> points;
    points.reserve(s_list.size());
    for (std::size_t si = 0; si < s_list.size(); ++si) {
        points.push_back({s_list[si],
                          static_cast<double>(bad[si]) / config.replicates,
                          config.replicates});
    }
    return points;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_coverage_csv(const CoverageReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write report file: " + path.string());
    out << "replicate,S,kappa_hat,ci_lower,ci_upper,ci_width,ci_degenerate,covered,"
           "t_hat_real,t_hat_int,insufficient_data,bracket_hit,n_min_s1\n";
    for (const auto& rec : report.records) {
        out << rec.replicate << ',' << rec.S << ',' << format_double(rec.kappa_hat) << ','
            << format_double(rec.ci.lower) << ',' << format_double(rec.ci.upper) << ','
            << format_double(rec.ci.width) << ',' << (rec.ci.degenerate ? 1 : 0) << ','
            << (rec.covered ? 1 : 0) << ',' << format_double(rec.t_hat_real) << ','
            << rec.t_hat_int << ',' << (rec.insufficient_data ? 1 : 0) << ','
            << (rec.bracket_hit ? 1 : 0) << ',' << rec.ci.per_s_terms.front().n_min << '\n';
    }
}

void write_error_curve_csv(const std::vector<ErrorCurvePoint>& points,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write report file: " + path.string());
    out << "m,median_abs_error,q1,q3\n";
    for (const auto& pt : points) {
        out << pt.m << ',' << format_double(pt.median_abs_error) << ',' << format_double(pt.q1)
            << ',' << format_double(pt.q3) << '\n';
    }
}

void write_visits_csv(const std::vector<VisitConcentrationPoint>& points,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write report file: " + path.string());
    out << "s,bad_event_rate,replicates\n";
    for (const auto& pt : points) {
        out << pt.s << ',' << format_double(pt.bad_event_rate) << ',' << pt.replicates << '\n';
    }
}

}  // namespace mixtime
