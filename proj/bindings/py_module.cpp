#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mixtime/chain.hpp"
#include "mixtime/estimator.hpp"
#include "mixtime/harness.hpp"
#include "mixtime/kernel_io.hpp"
#include "mixtime/oracle.hpp"
#include "mixtime/sampler.hpp"

namespace py = pybind11;
using namespace mixtime;

PYBIND11_MODULE(_mixtime, m) {
    m.doc() = "Mixing-time estimation for finite ergodic Markov chains";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConvergenceError>(m, "ConvergenceError");

    py::class_<StateDistribution>(m, "StateDistribution")
        .def(py::init<std::vector<double>>(), py::arg("probs"))
        .def_static("uniform", &StateDistribution::uniform, py::arg("d"))
        .def_static("point_mass", &StateDistribution::point_mass, py::arg("d"), py::arg("state"))
        .def_property_readonly("d", &StateDistribution::dim)
        .def_property_readonly("probs", &StateDistribution::probs)
        .def("min_entry", &StateDistribution::min_entry)
        .def("__len__", &StateDistribution::dim)
        .def("__getitem__", [](const StateDistribution& p, int i) {
            if (i < 0 || i >= p.dim()) throw py::index_error();
            return p[i];
        });

    py::class_<MarkovKernel>(m, "MarkovKernel")
        .def(py::init<const std::vector<std::vector<double>>&>(), py::arg("rows"))
        .def_property_readonly("d", &MarkovKernel::dim)
        .def("rows", &MarkovKernel::rows)
        .def("row_distribution", &MarkovKernel::row_distribution, py::arg("i"))
        .def("__call__", [](const MarkovKernel& k, int i, int j) {
            if (i < 0 || i >= k.dim() || j < 0 || j >= k.dim()) throw py::index_error();
            return k(i, j);
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init<std::vector<int>, int>(), py::arg("states"), py::arg("d"))
        .def_property_readonly("d", &Trajectory::dim)
        .def_property_readonly("states", &Trajectory::states)
        .def("__len__", &Trajectory::length);

    // chain primitives
    m.def("total_variation", &total_variation, py::arg("p"), py::arg("q"));
    m.def("push_forward", &push_forward, py::arg("mu"), py::arg("kernel"));
    m.def("kernel_power", &kernel_power, py::arg("kernel"), py::arg("s"));
    m.def("stationary_distribution", &stationary_distribution, py::arg("kernel"));
    m.def("is_ergodic", &is_ergodic, py::arg("kernel"));
    m.def("dobrushin_coefficient", &dobrushin_coefficient, py::arg("kernel"));
    m.def("beta_ratio", &beta_ratio, py::arg("pi"));
    m.def("max_row_l1_distance", &max_row_l1_distance, py::arg("a"), py::arg("b"));
    m.def("wielandt_index", &wielandt_index, py::arg("d"));

    m.def("load_kernel", [](const std::string& path) { return load_kernel(path); }, py::arg("path"));
    m.def("save_kernel",
          [](const MarkovKernel& k, const std::string& path) { save_kernel(k, path); },
          py::arg("kernel"), py::arg("path"));

    // oracle
    py::class_<SkipCoefficient>(m, "SkipCoefficient")
        .def_readonly("s", &SkipCoefficient::s)
        .def_readonly("kappa_s", &SkipCoefficient::kappa_s)
        .def_readonly("rate", &SkipCoefficient::rate);

    py::class_<ExactContraction>(m, "ExactContraction")
        .def_readonly("kappa_gen", &ExactContraction::kappa_gen)
        .def_readonly("k_gen", &ExactContraction::k_gen)
        .def_readonly("scanned_up_to", &ExactContraction::scanned_up_to)
        .def_readonly("per_s", &ExactContraction::per_s);

    py::class_<SandwichBounds>(m, "SandwichBounds")
        .def_readonly("lower", &SandwichBounds::lower)
        .def_readonly("upper", &SandwichBounds::upper)
        .def_readonly("tmix", &SandwichBounds::tmix)
        .def_readonly("holds", &SandwichBounds::holds);

    m.def("distance_to_stationarity", &distance_to_stationarity, py::arg("kernel"), py::arg("t"));
    m.def("exact_mixing_time", &exact_mixing_time, py::arg("kernel"), py::arg("xi") = 0.25);
    m.def("exact_kappa_s", &exact_kappa_s, py::arg("kernel"), py::arg("s"));
    m.def("exact_generalized_contraction", &exact_generalized_contraction, py::arg("kernel"));
    m.def("sandwich_bounds", &sandwich_bounds, py::arg("kernel"), py::arg("xi") = 0.25);
    m.def("skipped_mixing_time", &skipped_mixing_time, py::arg("kernel"), py::arg("s"),
          py::arg("xi") = 0.25);

    // sampling
    m.def("sample_trajectory",
          [](const MarkovKernel& kernel, const StateDistribution& initial, std::int64_t m_,
             std::uint64_t seed) { return sample_trajectory(kernel, initial, m_, RandomSeed{seed}); },
          py::arg("kernel"), py::arg("initial"), py::arg("m"), py::arg("seed"));
    m.def("skip_subsample", &skip_subsample, py::arg("traj"), py::arg("s"));
    m.def("load_trajectory", [](const std::string& path) { return load_trajectory(path); },
          py::arg("path"));
    m.def("save_trajectory",
          [](const Trajectory& t, const std::string& path) { save_trajectory(t, path); },
          py::arg("traj"), py::arg("path"));

    // estimators
    py::class_<SkipCounts>(m, "SkipCounts")
        .def_readonly("s", &SkipCounts::s)
        .def_readonly("d", &SkipCounts::d)
        .def_readonly("visits", &SkipCounts::visits)
        .def_readonly("n_min", &SkipCounts::n_min)
        .def_readonly("num_steps", &SkipCounts::num_steps)
        .def("visit", &SkipCounts::visit, py::arg("i"))
        .def("transition", &SkipCounts::transition, py::arg("i"), py::arg("j"));

    py::class_<EmpiricalKernel>(m, "EmpiricalKernel")
        .def_readonly("kernel", &EmpiricalKernel::kernel)
        .def_readonly("lambda_", &EmpiricalKernel::lambda)
        .def_readonly("visited", &EmpiricalKernel::visited);

    py::class_<SkipEstimate>(m, "SkipEstimate")
        .def_readonly("s", &SkipEstimate::s)
        .def_readonly("kappa_s", &SkipEstimate::kappa_s)
        .def_readonly("rate", &SkipEstimate::rate);

    py::class_<ContractionEstimate>(m, "ContractionEstimate")
        .def_readonly("kappa_hat", &ContractionEstimate::kappa_hat)
        .def_readonly("per_s", &ContractionEstimate::per_s)
        .def_readonly("arg_s", &ContractionEstimate::arg_s)
        .def_readonly("S", &ContractionEstimate::S);

    py::class_<IntervalTerm>(m, "IntervalTerm")
        .def_readonly("s", &IntervalTerm::s)
        .def_readonly("log_factor", &IntervalTerm::log_factor)
        .def_readonly("n_min", &IntervalTerm::n_min)
        .def_readonly("term", &IntervalTerm::term);

    py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
        .def_readonly("center", &ConfidenceInterval::center)
        .def_readonly("width", &ConfidenceInterval::width)
        .def_readonly("lower", &ConfidenceInterval::lower)
        .def_readonly("upper", &ConfidenceInterval::upper)
        .def_readonly("delta", &ConfidenceInterval::delta)
        .def_readonly("degenerate", &ConfidenceInterval::degenerate)
        .def_readonly("per_s_terms", &ConfidenceInterval::per_s_terms);

    py::class_<MixingTimeEstimate>(m, "MixingTimeEstimate")
        .def_readonly("t_hat_real", &MixingTimeEstimate::t_hat_real)
        .def_readonly("t_hat_int", &MixingTimeEstimate::t_hat_int)
        .def_readonly("insufficient_data", &MixingTimeEstimate::insufficient_data)
        .def_readonly("contraction", &MixingTimeEstimate::contraction);

    m.def("accumulate_counts", &accumulate_counts, py::arg("traj"), py::arg("s"));
    m.def("empirical_kernel", &empirical_kernel, py::arg("counts"), py::arg("lambda_") = 0.0);
    m.def("empirical_dobrushin", &empirical_dobrushin, py::arg("ek"));
    m.def("estimate_kappa_gen", &estimate_kappa_gen, py::arg("traj"), py::arg("S"),
          py::arg("lambda_") = 0.0);
    m.def("solve_log_factor", &solve_log_factor, py::arg("m"), py::arg("r"), py::arg("d"),
          py::arg("S"), py::arg("delta"));
    m.def("confidence_interval", &confidence_interval, py::arg("traj"), py::arg("S"),
          py::arg("delta"), py::arg("lambda_") = 0.0);
    m.def("estimate_absolute", &estimate_absolute, py::arg("traj"), py::arg("eps"),
          py::arg("lambda_") = 0.0);
    m.def("adaptive_S", &adaptive_S, py::arg("counts_s1"), py::arg("d"));
    m.def("estimate_relative", &estimate_relative, py::arg("traj"), py::arg("lambda_") = 0.0);
    m.def("estimate_mixing_time", &estimate_mixing_time, py::arg("traj"), py::arg("lambda_") = 0.0);
    m.def("pimin_plugin", &pimin_plugin, py::arg("counts_s1"));
    m.def("heuristic_S", &heuristic_S, py::arg("m"), py::arg("d"), py::arg("pimin_lb"),
          py::arg("n") = 3);

    // chain corpus generator
    m.def("generate_chain",
          [](const std::string& family, int d, const std::vector<double>& params,
             std::uint64_t seed) {
              ChainSpec spec;
              spec.family = parse_family(family);
              spec.d = d;
              spec.params = params;
              spec.seed = RandomSeed{seed};
              return generate_chain(spec);
          },
          py::arg("family"), py::arg("d"), py::arg("params") = std::vector<double>{},
          py::arg("seed") = 0);
}
