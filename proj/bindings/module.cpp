#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dcpso/abs.hpp"
#include "dcpso/analysis.hpp"
#include "dcpso/baseline.hpp"
#include "dcpso/benchmarks.hpp"
#include "dcpso/errors.hpp"
#include "dcpso/harness.hpp"

namespace py = pybind11;
using namespace dcpso;

PYBIND11_MODULE(_core, m) {
    m.doc() = "dual-channel particle swarm optimizer with adaptive balance search";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::enum_<Variant>(m, "Variant")
        .value("FULL", Variant::Full)
        .value("P_ONLY", Variant::POnly)
        .value("NON_G_ONLY", Variant::NonGOnly)
        .value("G_ONLY", Variant::GOnly);

    py::enum_<FunctionCategory>(m, "FunctionCategory")
        .value("UNIMODAL", FunctionCategory::Unimodal)
        .value("SIMPLE_MULTIMODAL", FunctionCategory::SimpleMultimodal)
        .value("COMPLEX_MULTIMODAL", FunctionCategory::ComplexMultimodal);

    py::class_<SearchSpace>(m, "SearchSpace")
        .def_readonly("dimension", &SearchSpace::dimension)
        .def_readonly("lower", &SearchSpace::lower)
        .def_readonly("upper", &SearchSpace::upper)
        .def_readonly("v_max", &SearchSpace::v_max);

    py::class_<ObjectiveFunction>(m, "ObjectiveFunction")
        .def_readonly("name", &ObjectiveFunction::name)
        .def_readonly("dimension", &ObjectiveFunction::dimension)
        .def_readonly("bounds", &ObjectiveFunction::bounds)
        .def_readonly("f_star", &ObjectiveFunction::f_star)
        .def_readonly("optimum", &ObjectiveFunction::optimum)
        .def_readonly("category", &ObjectiveFunction::category)
        .def("evaluate",
             [](const ObjectiveFunction& f, const std::vector<double>& x) {
                 if (x.size() != f.dimension)
                     throw ConfigError("evaluate: point dimension does not match the function");
                 return f.evaluate(x);
             })
        .def("__call__",
             [](const ObjectiveFunction& f, const std::vector<double>& x) {
                 if (x.size() != f.dimension)
                     throw ConfigError("evaluate: point dimension does not match the function");
                 return f.evaluate(x);
             })
        .def("__repr__", [](const ObjectiveFunction& f) {
            return "<ObjectiveFunction " + f.name + " dim=" + std::to_string(f.dimension) + ">";
        });

    m.def("make_function", &make_function, py::arg("id"), py::arg("dimension"),
          "Construct a registered benchmark function by id.");
    m.def(
        "list_functions",
        [] {
            py::list out;
            for (const FunctionInfo& info : list_functions())
                out.append(py::make_tuple(info.id, category_name(info.category), info.summary));
            return out;
        },
        "Rows of (id, category, summary) for everything the registry can build.");

    py::class_<ScheduleParams>(m, "ScheduleParams")
        .def(py::init<>())
        .def_readwrite("w_start", &ScheduleParams::w_start)
        .def_readwrite("w_end", &ScheduleParams::w_end)
        .def_readwrite("c1_start", &ScheduleParams::c1_start)
        .def_readwrite("c1_end", &ScheduleParams::c1_end)
        .def_readwrite("c2_start", &ScheduleParams::c2_start)
        .def_readwrite("c2_end", &ScheduleParams::c2_end);

    py::class_<AbsConfig>(m, "AbsConfig")
        .def(py::init<>())
        .def_readwrite("refreshing_gap", &AbsConfig::refreshing_gap)
        .def_readwrite("population", &AbsConfig::population)
        .def_readwrite("max_evaluations", &AbsConfig::max_evaluations)
        .def_readwrite("variant", &AbsConfig::variant)
        .def_readwrite("schedule", &AbsConfig::schedule)
        .def_readwrite("pc_min", &AbsConfig::pc_min)
        .def_readwrite("pc_max", &AbsConfig::pc_max);

    py::class_<IterationSample>(m, "IterationSample")
        .def_readonly("fes", &IterationSample::fes)
        .def_readonly("error", &IterationSample::error)
        .def_readonly("diversity", &IterationSample::diversity)
        .def_readonly("non_g_steps", &IterationSample::non_g_steps)
        .def_readonly("g_steps", &IterationSample::g_steps)
        .def_readonly("pdg_events", &IterationSample::pdg_events)
        .def_readonly("cap_non_g", &IterationSample::cap_non_g)
        .def_readonly("cap_g", &IterationSample::cap_g);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("algorithm", &TrialRecord::algorithm)
        .def_readonly("function", &TrialRecord::function)
        .def_readonly("seed", &TrialRecord::seed)
        .def_readonly("samples", &TrialRecord::samples)
        .def_readonly("final_error", &TrialRecord::final_error)
        .def_readonly("evaluations", &TrialRecord::evaluations)
        .def_readonly("nonfinite_rejections", &TrialRecord::nonfinite_rejections)
        .def("__repr__", [](const TrialRecord& r) {
            return "<TrialRecord " + r.algorithm + " on " + r.function +
                   " final_error=" + std::to_string(r.final_error) + ">";
        });

    m.def("run_dcpso_abs", &run_dcpso_abs, py::arg("objective"), py::arg("config"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>(),
          "Run the dual-channel optimizer on an objective.");
    m.def("run_standard_pso", &run_standard_pso, py::arg("objective"), py::arg("config"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>(),
          "Run the plain global-best baseline on an objective.");
    m.def(
        "run",
        [](const std::string& algorithm, const std::string& function, std::size_t dimension,
           std::uint64_t seed, long long max_evaluations, int refreshing_gap,
           std::size_t population) {
            AlgorithmSpec spec = resolve_algorithm(algorithm);
            spec.config.max_evaluations = max_evaluations;
            spec.config.refreshing_gap = refreshing_gap;
            spec.config.population = population;
            const ObjectiveFunction fn = make_function(function, dimension);
            py::gil_scoped_release release;
            return run_algorithm(spec, fn, seed);
        },
        py::arg("algorithm"), py::arg("function"), py::arg("dimension"), py::arg("seed"),
        py::arg("max_evaluations") = 0, py::arg("refreshing_gap") = 6,
        py::arg("population") = 20,
        "Run one trial by algorithm id ('dcpso-abs', 'dcpso-abs-p', 'pso-abs-non-g', "
        "'pso-abs-g', 'pso') and function id.");

    m.def(
        "diversity",
        [](const std::vector<std::vector<double>>& positions) { return diversity(positions); },
        py::arg("positions"), "Mean distance of the positions to their centroid.");

    py::class_<WilcoxonResult>(m, "WilcoxonResult")
        .def_property_readonly("verdict",
                               [](const WilcoxonResult& r) {
                                   return std::string(1, verdict_symbol(r.verdict));
                               })
        .def_readonly("w_plus", &WilcoxonResult::w_plus)
        .def_readonly("w_minus", &WilcoxonResult::w_minus)
        .def_readonly("p_value", &WilcoxonResult::p_value)
        .def_readonly("n_effective", &WilcoxonResult::n_effective)
        .def_readonly("exact", &WilcoxonResult::exact)
        .def_readonly("inconclusive", &WilcoxonResult::inconclusive)
        .def("__repr__", [](const WilcoxonResult& r) {
            return std::string("<WilcoxonResult '") + verdict_symbol(r.verdict) +
                   "' p=" + std::to_string(r.p_value) + ">";
        });

    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double>& candidate, const std::vector<double>& reference,
           double alpha) { return wilcoxon_signed_rank(candidate, reference, alpha); },
        py::arg("candidate"), py::arg("reference"), py::arg("alpha") = 0.05,
        "Paired signed-rank test; verdict '+' means candidate significantly lower.");

    m.def(
        "adaptive_split",
        [](int gap, long long evaluations, long long max_evaluations) {
            const ChannelCaps c = adaptive_split(gap, evaluations, max_evaluations);
            return py::make_tuple(c.non_g, c.g);
        },
        py::arg("gap"), py::arg("evaluations"), py::arg("max_evaluations"),
        "Split the refreshing gap into (non_g, g) per-direction caps.");

    m.def(
        "select_channel",
        [](int searches, bool non_g_improved, int cap_non_g, int gap) -> std::string {
            switch (select_channel(searches, non_g_improved, cap_non_g, gap)) {
            case ChannelDecision::RunPdg: return "pdg";
            case ChannelDecision::RunNonG: return "non_g";
            case ChannelDecision::RunG: return "g";
            }
            throw InternalError("select_channel: unknown decision");
        },
        py::arg("searches"), py::arg("non_g_improved"), py::arg("cap_non_g"), py::arg("gap"),
        "Next action for a sub-swarm: 'pdg', 'non_g' or 'g'.");

    m.def(
        "run_experiment",
        [](const std::filesystem::path& config_path) {
            const ExperimentConfig cfg = load_experiment_config(config_path);
            ComparisonReport report;
            {
                py::gil_scoped_release release;
                report = run_experiment(cfg).report;
            }
            return report_to_json(report);
        },
        py::arg("config_path"),
        "Run an experiment config file; returns the comparison report as JSON text.");
}
