#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixtime/chain.hpp"
#include "mixtime/estimator.hpp"
#include "mixtime/harness.hpp"
#include "mixtime/kernel_io.hpp"
#include "mixtime/oracle.hpp"
#include "mixtime/sampler.hpp"

namespace {

using nlohmann::json;

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

// nlohmann serializes non-finite doubles as null already; this makes the
// intent explicit at the call sites.
json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

mixtime::StateDistribution resolve_start(const std::string& mu, const mixtime::MarkovKernel& kernel) {
    if (mu == "stationary") return mixtime::stationary_distribution(kernel);
    if (mu == "uniform") return mixtime::StateDistribution::uniform(kernel.dim());
    if (mu.rfind("point:", 0) == 0) {
        return mixtime::StateDistribution::point_mass(kernel.dim(), std::stoi(mu.substr(6)));
    }
    throw std::invalid_argument("--mu must be stationary, uniform, or point:<i>");
}

json estimate_to_json(const mixtime::ContractionEstimate& est) {
    json per_s = json::array();
    for (const auto& row : est.per_s) {
        per_s.push_back({{"s", row.s}, {"kappa_s", row.kappa_s}, {"rate", row.rate}});
    }
    json out;
    out["kappa_hat"] = est.kappa_hat;
    out["arg_s"] = est.arg_s;
    out["S"] = est.S;
    out["per_s"] = per_s;
    const bool insufficient = est.kappa_hat >= 1.0;
    out["insufficient_data"] = insufficient;
    out["t_hat_real"] = insufficient ? json(nullptr) : json(1.0 / (1.0 - est.kappa_hat));
    out["t_hat_int"] =
        insufficient ? json(nullptr)
                     : json(static_cast<std::int64_t>(std::ceil(1.0 / (1.0 - est.kappa_hat))));
    return out;
}

struct GenArgs {
    std::string family;
    int d = 2;
    std::uint64_t seed = 0;
    std::vector<double> params;
    std::string out;
};

struct SampleArgs {
    std::string kernel;
    std::int64_t m = 2;
    std::uint64_t seed = 0;
    std::string mu = "stationary";
    std::string out;
};

struct OracleArgs {
    std::string kernel;
    double xi = 0.25;
};

struct EstimateArgs {
    std::string traj;
    std::int64_t S = 0;
    double eps = 0.0;
    bool adaptive = false;
    bool use_eps = false;
    double lambda = 0.0;
};

struct CiArgs {
    std::string traj;
    std::int64_t S = 1;
    double delta = 0.1;
    double lambda = 0.0;
};

struct BenchArgs {
    std::string config;
    std::string out;
};

void run_gen(const GenArgs& args) {
    mixtime::ChainSpec spec;
    spec.family = mixtime::parse_family(args.family);
    spec.d = args.d;
    spec.params = args.params;
    spec.seed = mixtime::RandomSeed{args.seed};
    mixtime::save_kernel(mixtime::generate_chain(spec), args.out);
}

void run_sample(const SampleArgs& args) {
    const mixtime::MarkovKernel kernel = mixtime::load_kernel(args.kernel);
    const mixtime::StateDistribution start = resolve_start(args.mu, kernel);
    mixtime::save_trajectory(
        mixtime::sample_trajectory(kernel, start, args.m, mixtime::RandomSeed{args.seed}),
        args.out);
}

void run_oracle(const OracleArgs& args) {
    const mixtime::MarkovKernel kernel = mixtime::load_kernel(args.kernel);
    if (!mixtime::is_ergodic(kernel)) {
        throw mixtime::ConvergenceError("kernel is not ergodic; oracle quantities are undefined");
    }
    const mixtime::ExactContraction ec = mixtime::exact_generalized_contraction(kernel);
    const mixtime::SandwichBounds sb = mixtime::sandwich_bounds(kernel, args.xi);
    const mixtime::StateDistribution pi = mixtime::stationary_distribution(kernel);
    emit({{"kappa_gen", ec.kappa_gen},
          {"k_gen", ec.k_gen},
          {"tmix", sb.tmix},
          {"pimin", pi.min_entry()},
          {"beta", mixtime::beta_ratio(pi)},
          {"bracket_lower", sb.lower},
          {"bracket_upper", sb.upper}});
}

void run_estimate(const EstimateArgs& args) {
    const mixtime::Trajectory traj = mixtime::load_trajectory(args.traj);
    mixtime::ContractionEstimate est;
    if (args.adaptive) {
        est = mixtime::estimate_relative(traj, args.lambda);
    } else if (args.use_eps) {
        est = mixtime::estimate_absolute(traj, args.eps, args.lambda);
    } else {
        est = mixtime::estimate_kappa_gen(traj, args.S, args.lambda);
    }
    emit(estimate_to_json(est));
}

void run_ci(const CiArgs& args) {
    const mixtime::Trajectory traj = mixtime::load_trajectory(args.traj);
    const mixtime::ConfidenceInterval ci =
        mixtime::confidence_interval(traj, args.S, args.delta, args.lambda);
    json terms = json::array();
    for (const auto& t : ci.per_s_terms) {
        terms.push_back({{"s", t.s},
                         {"log_factor", t.log_factor},
                         {"n_min", t.n_min},
                         {"term", finite_or_null(t.term)}});
    }
    emit({{"center", ci.center},
          {"width", finite_or_null(ci.width)},
          {"lower", ci.lower},
          {"upper", ci.upper},
          {"delta", ci.delta},
          {"degenerate", ci.degenerate},
          {"per_s_terms", terms}});
}

void run_bench(const std::string& experiment, const BenchArgs& args) {
    const mixtime::ExperimentConfig config = mixtime::load_config(args.config);
    if (experiment == "coverage") {
        const mixtime::CoverageReport report = mixtime::run_coverage(config);
        mixtime::write_coverage_csv(report, args.out);
        emit({{"kappa_gen", report.truth.kappa_gen},
              {"k_gen", report.truth.k_gen},
              {"tmix", report.truth.tmix},
              {"pimin", report.truth.pimin},
              {"coverage", report.coverage_rate},
              {"median_abs_error", report.median_abs_error},
              {"bracket_rate", report.bracket_rate}});
    } else if (experiment == "error-curve") {
        if (config.m_grid.empty()) {
            throw std::invalid_argument("error-curve config needs a nonempty m_grid");
        }
        mixtime::write_error_curve_csv(mixtime::run_error_curve(config, config.m_grid), args.out);
    } else {
        if (config.s_list.empty()) {
            throw std::invalid_argument("visits config needs a nonempty s_list");
        }
        mixtime::write_visits_csv(mixtime::run_visit_concentration(config, config.s_list),
                                  args.out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixing-time estimation for finite ergodic Markov chains"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate an ergodic kernel and write it as JSON");
    gen->add_option("--family", gen_args.family,
                    "random-dirichlet | lazy-cycle | biased-cycle | three-state-funnel | "
                    "rank-one | two-state")
        ->required();
    gen->add_option("--d", gen_args.d, "State count");
    gen->add_option("--seed", gen_args.seed, "Generator seed");
    gen->add_option("--params", gen_args.params, "Family-specific parameters");
    gen->add_option("--out", gen_args.out, "Output kernel file")->required();
    gen->callback([&] { run_gen(gen_args); });

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Simulate a trajectory from a kernel file");
    sample->add_option("--kernel", sample_args.kernel, "Kernel JSON file")->required();
    sample->add_option("--m", sample_args.m, "Trajectory length (>= 2)")->required();
    sample->add_option("--seed", sample_args.seed, "Sampler seed");
    sample->add_option("--mu", sample_args.mu, "Initial distribution: stationary | uniform | point:<i>");
    sample->add_option("--out", sample_args.out, "Output trajectory file")->required();
    sample->callback([&] { run_sample(sample_args); });

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Exact contraction and mixing-time quantities");
    oracle->add_option("--kernel", oracle_args.kernel, "Kernel JSON file")->required();
    oracle->add_option("--xi", oracle_args.xi, "Mixing threshold in (0, 1/2)");
    oracle->callback([&] { run_oracle(oracle_args); });

    EstimateArgs estimate_args;
    auto* estimate = app.add_subcommand("estimate", "Single-trajectory contraction estimate");
    estimate->add_option("--traj", estimate_args.traj, "Trajectory file")->required();
    auto* mode = estimate->add_option_group("mode", "Scan bound selection");
    mode->add_option("--S", estimate_args.S, "Fixed scan bound");
    auto* eps_opt =
        mode->add_option("--eps", estimate_args.eps, "Absolute-error target; scans ceil(2/eps)");
    mode->add_flag("--adaptive", estimate_args.adaptive, "Data-dependent scan bound");
    mode->require_option(1);
    estimate->add_option("--lambda", estimate_args.lambda, "Additive smoothing (default 0)");
    estimate->callback([&, eps_opt] {
        estimate_args.use_eps = eps_opt->count() > 0;
        run_estimate(estimate_args);
    });

    CiArgs ci_args;
    auto* ci = app.add_subcommand("ci", "Empirical confidence interval for the contraction coefficient");
    ci->add_option("--traj", ci_args.traj, "Trajectory file")->required();
    ci->add_option("--S", ci_args.S, "Scan bound")->required();
    ci->add_option("--delta", ci_args.delta, "Confidence parameter in (0, 1)")->required();
    ci->add_option("--lambda", ci_args.lambda, "Additive smoothing (default 0)");
    ci->callback([&] { run_ci(ci_args); });

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Monte Carlo experiments against exact oracles");
    bench->require_subcommand(1);
    for (const std::string name : {"coverage", "error-curve", "visits"}) {
        auto* sub = bench->add_subcommand(name);
        sub->add_option("--config", bench_args.config, "Experiment config JSON")->required();
        sub->add_option("--out", bench_args.out, "Output CSV report")->required();
        sub->callback([&bench_args, name] { run_bench(name, bench_args); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mixtime::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
