// Acceptance suite: exercises the library end to end against exact oracles
// and Monte Carlo experiments at fixed seeds, one criterion per line.
// Usage: mixtime_acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mixtime/estimator.hpp"
#include "mixtime/harness.hpp"
#include "mixtime/oracle.hpp"
#include "mixtime/rng.hpp"
#include "mixtime/sampler.hpp"

using namespace mixtime;

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;

constexpr double kTol = 1e-12;

MarkovKernel two_state() { return MarkovKernel({{0.75, 0.25}, {0.25, 0.75}}); }
MarkovKernel funnel() {
    return MarkovKernel({{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.5, 0.0}});
}

ChainSpec spec_of(ChainFamily family, int d, std::vector<double> params, std::uint64_t seed) {
    ChainSpec spec;
    spec.family = family;
    spec.d = d;
    spec.params = std::move(params);
    spec.seed = RandomSeed{seed};
    return spec;
}

// d in {2..8}, more than 20 chains, every family represented.
std::vector<MarkovKernel> acceptance_corpus() {
    std::vector<MarkovKernel> chains;
    for (int d = 2; d <= 8; ++d) {
        chains.push_back(generate_chain(spec_of(ChainFamily::RandomDirichlet, d, {1.0}, 100 + d)));
    }
    for (int d = 3; d <= 8; ++d) {
        chains.push_back(generate_chain(spec_of(ChainFamily::LazyCycle, d, {0.5}, 0)));
    }
    for (int d = 3; d <= 8; ++d) {
        chains.push_back(generate_chain(spec_of(ChainFamily::BiasedCycle, d, {0.8}, 0)));
    }
    chains.push_back(two_state());
    chains.push_back(generate_chain(spec_of(ChainFamily::TwoState, 2, {0.6, 0.1}, 0)));
    chains.push_back(funnel());
    chains.push_back(generate_chain(spec_of(ChainFamily::RankOne, 5, {}, 42)));
    return chains;
}

std::string criterion_sandwich() {
    const auto chains = acceptance_corpus();
    if (chains.size() < 20) return "corpus has fewer than 20 chains";
    for (std::size_t idx = 0; idx < chains.size(); ++idx) {
        if (!is_ergodic(chains[idx])) return "chain " + std::to_string(idx) + " is not ergodic";
        for (double xi : {0.05, 0.1, 0.25, 0.4}) {
            const auto sb = sandwich_bounds(chains[idx], xi);
            if (!sb.holds) {
                return "bracket violated on chain " + std::to_string(idx) +
                       " at xi=" + std::to_string(xi);
            }
        }
    }
    return "";
}

std::string criterion_worked_two_state() {
    const auto kernel = two_state();
    const auto ec = exact_generalized_contraction(kernel);
    if (std::abs(ec.kappa_gen - 0.5) > kTol) return "kappa_gen != 0.5";
    if (ec.k_gen != 1) return "k_gen != 1";
    const auto sb = sandwich_bounds(kernel, 0.25);
    if (sb.tmix != 2) return "tmix != 2";
    if (std::abs(sb.lower - 1.0) > kTol) return "bracket lower != 1";
    if (std::abs(sb.upper - (1.0 + std::log(4.0)) / 0.5) > kTol) return "bracket upper off";
    if (!sb.holds) return "bracket does not hold";
    return "";
}

std::string criterion_worked_funnel() {
    const auto kernel = funnel();
    const double expected[] = {1.0, 1.0, 0.5, 0.25};
    for (int s = 1; s <= 4; ++s) {
        if (std::abs(exact_kappa_s(kernel, s) - expected[s - 1]) > kTol) {
            return "kappa_" + std::to_string(s) + " off";
        }
    }
    const auto ec = exact_generalized_contraction(kernel);
    if (std::abs(ec.kappa_gen - 0.8125) > kTol) return "kappa_gen != 0.8125";
    if (ec.k_gen != 4) return "k_gen != 4";
    return "";
}

std::string criterion_facts() {
    CounterRng rng(RandomSeed{404});
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<std::vector<double>> rows_a(static_cast<std::size_t>(d)),
            rows_b(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            double sum_a = 0.0, sum_b = 0.0;
            rows_a[i].resize(static_cast<std::size_t>(d));
            rows_b[i].resize(static_cast<std::size_t>(d));
            while (sum_a == 0.0) {
                for (int j = 0; j < d; ++j) {
                    double w = -std::log(1.0 - rng.next_unit());
                    if (rng.next_unit() < 0.3) w = 0.0;
                    rows_a[i][j] = w;
                    sum_a += w;
                }
            }
            for (int j = 0; j < d; ++j) {
                rows_b[i][j] = -std::log(1.0 - rng.next_unit());
                sum_b += rows_b[i][j];
            }
            for (int j = 0; j < d; ++j) {
                rows_a[i][j] /= sum_a;
                rows_b[i][j] /= sum_b;
            }
        }
        const MarkovKernel a(rows_a), b(rows_b);
        if (std::abs(dobrushin_coefficient(a) - dobrushin_coefficient(b)) >
            max_row_l1_distance(a, b) + kTol) {
            return "metric domination violated at trial " + std::to_string(trial);
        }
    }
    for (const auto& kernel : acceptance_corpus()) {
        const std::int64_t tmix = exact_mixing_time(kernel, 0.25);
        for (std::int64_t s = 1; s <= 5; ++s) {
            if (skipped_mixing_time(kernel, s, 0.25) > (tmix + s - 1) / s) {
                return "skipped mixing bound violated at s=" + std::to_string(s);
            }
        }
    }
    return "";
}

std::string criterion_coverage() {
    ExperimentConfig config;
    config.spec = spec_of(ChainFamily::TwoState, 2, {0.25, 0.25}, 1);
    config.m = 50'000;
    config.replicates = 200;
    config.delta = 0.1;
    config.s_mode = ScanMode::Heuristic;
    config.master_seed = RandomSeed{20240501};
    const auto report = run_coverage(config);
    if (report.coverage_rate < 0.85) {
        return "coverage " + std::to_string(report.coverage_rate) + " < 0.85";
    }
    return "";
}

std::string criterion_consistency() {
    const std::vector<std::int64_t> grid{1'000, 10'000, 100'000};
    const std::vector<std::pair<std::string, ChainSpec>> targets{
        {"two-state", spec_of(ChainFamily::TwoState, 2, {0.25, 0.25}, 1)},
        {"funnel", spec_of(ChainFamily::ThreeStateFunnel, 3, {}, 1)},
    };
    for (const auto& [name, spec] : targets) {
        ExperimentConfig config;
        config.spec = spec;
        config.replicates = 20;
        config.s_mode = ScanMode::Adaptive;
        config.master_seed = RandomSeed{7};
        const auto points = run_error_curve(config, grid);
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].median_abs_error > points[i - 1].median_abs_error) {
                return name + ": median error rose from m=" + std::to_string(points[i - 1].m) +
                       " to m=" + std::to_string(points[i].m);
            }
        }
        if (name == "two-state" && points.back().median_abs_error >= 0.05) {
            return "two-state median error at m=1e5 is " +
                   std::to_string(points.back().median_abs_error);
        }
    }
    return "";
}

std::string criterion_mixing_bracket() {
    const std::vector<std::pair<std::string, MarkovKernel>> targets{
        {"two-state", two_state()}, {"funnel", funnel()}};
    for (const auto& [name, kernel] : targets) {
        const auto pi = stationary_distribution(kernel);
        const double tmix = static_cast<double>(exact_mixing_time(kernel, 0.25));
        const RandomSeed master{515};
        int hits = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const auto traj = sample_trajectory(kernel, pi, 1'000'000,
                                                derive_seed(master, static_cast<std::uint64_t>(rep)));
            const auto est = estimate_mixing_time(traj, 0.0);
            if (!est.insufficient_data && est.t_hat_real >= tmix / 3.0 &&
                est.t_hat_real <= 3.0 * tmix) {
                ++hits;
            }
        }
        if (hits < 18) {
            return name + ": only " + std::to_string(hits) + "/20 replicates in the bracket";
        }
    }
    return "";
}

std::string criterion_visit_concentration() {
    ExperimentConfig config;
    config.spec = spec_of(ChainFamily::TwoState, 2, {0.25, 0.25}, 1);
    config.m = 100'000;
    config.replicates = 100;
    config.master_seed = RandomSeed{8080};
    const auto points = run_visit_concentration(config, {1, 2, 3});
    for (const auto& pt : points) {
        if (pt.bad_event_rate > 0.05) {
            return "bad-event rate " + std::to_string(pt.bad_event_rate) +
                   " at s=" + std::to_string(pt.s);
        }
    }
    return "";
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path.string() + ">";
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string criterion_cli_determinism() {
    if (g_cli_path.empty()) return "no CLI path given (pass it as argv[1])";
    const fs::path dir = fs::temp_directory_path() / "mixtime_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = "\"" + g_cli_path + "\"";
    const auto at = [&](const std::string& name) { return (dir / name).string(); };

    std::ofstream(dir / "config.json") << R"({
        "chain": {"family": "two-state", "d": 2, "params": [0.25, 0.25], "seed": 3},
        "m": 2000, "replicates": 5, "delta": 0.1, "S_mode": "heuristic", "master_seed": 11
    })";

    const std::vector<std::pair<std::string, std::string>> runs{
        {"gen --family random-dirichlet --d 4 --seed 7 --out {} >/dev/null", "gen"},
        {"sample --kernel " + at("gen.1") + " --m 2000 --seed 9 --out {} >/dev/null", "sample"},
        {"oracle --kernel " + at("gen.1") + " > {}", "oracle"},
        {"estimate --traj " + at("sample.1") + " --adaptive > {}", "estimate"},
        {"ci --traj " + at("sample.1") + " --S 5 --delta 0.1 > {}", "ci"},
        {"bench coverage --config " + at("config.json") + " --out {} >/dev/null", "bench"},
    };
    for (const auto& [tpl, name] : runs) {
        for (int attempt = 1; attempt <= 2; ++attempt) {
            std::string cmd = tpl;
            cmd.replace(cmd.find("{}"), 2, at(name + "." + std::to_string(attempt)));
            if (run_command(cli + " " + cmd + " 2>/dev/null") != 0) {
                return name + " exited nonzero";
            }
        }
        if (slurp(dir / (name + ".1")) != slurp(dir / (name + ".2"))) {
            return name + " output differs between identical runs";
        }
        if (slurp(dir / (name + ".1")).empty()) return name + " produced no output";
    }
    fs::remove_all(dir);
    return "";
}

struct Criterion {
    std::string label;
    double limit_seconds;  // 0 = no stated limit
    std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    const std::vector<Criterion> criteria{
        {"contraction bracket traps tmix on 23 generated chains x 4 thresholds", 10.0,
         criterion_sandwich},
        {"worked two-state chain matches hand values to 1e-12", 0.0, criterion_worked_two_state},
        {"worked three-state funnel matches hand values to 1e-12", 0.0, criterion_worked_funnel},
        {"metric domination (1000 kernel pairs) and skipped-mixing bound", 30.0, criterion_facts},
        {"interval coverage >= 0.85 over 200 replicates at delta=0.1", 120.0, criterion_coverage},
        {"median error non-increasing in m; < 0.05 at m=1e5", 300.0, criterion_consistency},
        {"mixing-time bracket hit by >= 90% of replicates at m=1e6", 300.0,
         criterion_mixing_bracket},
        {"visit-count bad event rate <= 0.05 for s in {1,2,3}", 120.0,
         criterion_visit_concentration},
        {"CLI runs are byte-identical under repeated seeds", 0.0, criterion_cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (detail.empty() && criterion.limit_seconds > 0.0 && elapsed > criterion.limit_seconds) {
            detail = "exceeded the " + std::to_string(criterion.limit_seconds) + "s budget";
        }
        const bool pass = detail.empty();
        failures += pass ? 0 : 1;
        std::printf("[%zu/%zu] %s  %s (%.2fs)%s%s\n", i + 1, criteria.size(),
                    pass ? "PASS" : "FAIL", criterion.label.c_str(), elapsed,
                    pass ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
