// pybind11 bindings for the qsand core: layouts, states, channels, entropy
// functionals, inequality chains, samplers and the remix optimizer.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsand/inequalities.hpp"
#include "qsand/io.hpp"
#include "qsand/optimizer.hpp"
#include "qsand/samplers.hpp"

namespace py = pybind11;
using namespace qsand;

namespace {

SystemLayout layout_from_pairs(const std::vector<std::pair<std::string, int>>& pairs) {
    std::vector<Factor> factors;
    factors.reserve(pairs.size());
    for (const auto& [label, dim] : pairs) factors.push_back({label, dim});
    return SystemLayout(std::move(factors));
}

std::vector<std::pair<std::string, int>> layout_to_pairs(const SystemLayout& layout) {
    std::vector<std::pair<std::string, int>> pairs;
    for (const auto& f : layout.factors()) pairs.emplace_back(f.label, f.dim);
    return pairs;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entropy-inequality chains, flagged channels and Kraus-remix bounds";
    m.attr("__version__") = kToolVersion;

    py::register_exception<consistency_error>(m, "ConsistencyError");

    py::class_<SystemLayout>(m, "SystemLayout")
        .def(py::init(&layout_from_pairs), py::arg("factors"),
             "factors: list of (label, dim) pairs, most significant first")
        .def_static("of_dims", &SystemLayout::of_dims, py::arg("dims"))
        .def_property_readonly("factors", &layout_to_pairs)
        .def_property_readonly("total_dim", &SystemLayout::total_dim)
        .def("labels", &SystemLayout::labels)
        .def("dim_of", &SystemLayout::dim_of, py::arg("label"))
        .def("__repr__",
             [](const SystemLayout& l) { return "SystemLayout(" + l.to_string() + ")"; })
        .def("__eq__", [](const SystemLayout& a, const SystemLayout& b) { return a == b; });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<ComplexMatrix, SystemLayout>(), py::arg("matrix"), py::arg("layout"))
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("layout", &DensityMatrix::layout)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def("trace_out", &DensityMatrix::trace_out, py::arg("labels"))
        .def("keeping", &DensityMatrix::keeping, py::arg("labels"))
        .def("regularized", &DensityMatrix::regularized,
             py::arg("eps") = tol::regularize_eps);

    py::class_<KrausSet>(m, "KrausSet")
        .def(py::init([](std::vector<ComplexMatrix> operators, std::string acting_on) {
                 return KrausSet{std::move(operators), std::move(acting_on)};
             }),
             py::arg("operators"), py::arg("acting_on") = std::string())
        .def_readwrite("operators", &KrausSet::operators)
        .def_readwrite("acting_on", &KrausSet::acting_on)
        .def_property_readonly("count", &KrausSet::count)
        .def_property_readonly("dim", &KrausSet::dim);

    py::class_<KrausValidation>(m, "KrausValidation")
        .def_readonly("max_deviation", &KrausValidation::max_deviation)
        .def_readonly("pass_", &KrausValidation::pass)
        .def("__bool__", [](const KrausValidation& v) { return v.pass; });

    py::class_<DilationResult>(m, "DilationResult")
        .def_readonly("sigma", &DilationResult::sigma)
        .def_readonly("isometry", &DilationResult::isometry)
        .def_readonly("flag_label", &DilationResult::flag_label)
        .def_readonly("env_label", &DilationResult::env_label);

    py::class_<SlackTerm>(m, "SlackTerm")
        .def_readonly("description", &SlackTerm::description)
        .def_readonly("value", &SlackTerm::value);

    py::class_<SlackReport>(m, "SlackReport")
        .def_readonly("chain_name", &SlackReport::chain_name)
        .def_readonly("terms", &SlackReport::terms)
        .def_readonly("slacks", &SlackReport::slacks)
        .def_readonly("tolerance", &SlackReport::tolerance)
        .def_readonly("passed", &SlackReport::passed)
        .def("min_slack", &SlackReport::min_slack);

    py::class_<SeededGenerator>(m, "SeededGenerator")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_property_readonly("seed", &SeededGenerator::seed)
        .def_static("algorithm", &SeededGenerator::algorithm)
        .def("next_uniform", &SeededGenerator::next_uniform)
        .def("next_gaussian", &SeededGenerator::next_gaussian)
        .def("child", &SeededGenerator::child, py::arg("index"));

    py::class_<RemixEvaluation>(m, "RemixEvaluation")
        .def_readonly("params", &RemixEvaluation::params)
        .def_readonly("value", &RemixEvaluation::value);

    py::class_<RemixTrace>(m, "RemixTrace")
        .def_readonly("evaluations", &RemixTrace::evaluations)
        .def_readonly("best_params", &RemixTrace::best_params)
        .def_readonly("best_unitary", &RemixTrace::best_unitary)
        .def_readonly("best_value", &RemixTrace::best_value)
        .def_readonly("baseline_value", &RemixTrace::baseline_value)
        .def_readonly("outer_lower", &RemixTrace::outer_lower)
        .def_readonly("outer_upper", &RemixTrace::outer_upper)
        .def_readonly("budget_used", &RemixTrace::budget_used)
        .def_readonly("seed", &RemixTrace::seed)
        .def_readonly("rng_algorithm", &RemixTrace::rng_algorithm);

    // linalg
    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def("partial_trace", &partial_trace, py::arg("matrix"), py::arg("layout"),
          py::arg("traced"));
    m.def("matrix_log_on_support", &matrix_log_on_support, py::arg("matrix"),
          py::arg("clip") = tol::spectral_clip);
    m.def("support_projector", &support_projector, py::arg("matrix"),
          py::arg("clip") = tol::spectral_clip);

    // entropy
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("relative_entropy", &relative_entropy, py::arg("rho"), py::arg("gamma"));
    m.def("conditional_entropy", &conditional_entropy, py::arg("rho"), py::arg("target"),
          py::arg("rest"));
    m.def("conditional_via_relative", &conditional_via_relative, py::arg("rho"),
          py::arg("target"), py::arg("rest"));

    // channels
    m.def("validate_kraus", &validate_kraus, py::arg("ks"));
    m.def("apply_channel", &apply_channel, py::arg("ks"), py::arg("rho"));
    m.def("apply_ls_channel", &apply_ls_channel, py::arg("ks"), py::arg("rho"));
    m.def("build_dilation", &build_dilation, py::arg("ks"), py::arg("rho"));
    m.def("remix_kraus", &remix_kraus, py::arg("ks"), py::arg("w"));
    m.def("embed_on_subsystem", &embed_on_subsystem, py::arg("ks"), py::arg("layout"));

    // inequality chains
    m.def("check_ssa", &check_ssa, py::arg("rho"), py::arg("tolerance") = tol::slack);
    m.def("check_monotonicity_form", &check_monotonicity_form, py::arg("rho"),
          py::arg("tolerance") = tol::slack);
    m.def("check_sandwich", &check_sandwich, py::arg("rho"), py::arg("gamma"), py::arg("ks"),
          py::arg("tolerance") = tol::slack);
    m.def("check_ls_main", &check_ls_main, py::arg("rho"), py::arg("ks"),
          py::arg("tolerance") = tol::slack);
    m.def("check_ls9", &check_ls9, py::arg("rho"), py::arg("ks_b"),
          py::arg("tolerance") = tol::slack);
    m.def("check_fin_equivalence", &check_fin_equivalence, py::arg("rho"), py::arg("ks_b"),
          py::arg("tolerance") = tol::slack);

    // samplers
    m.def(
        "random_density_matrix",
        [](const SystemLayout& layout, int rank, SeededGenerator& gen) {
            return random_density_matrix(layout, rank, gen);
        },
        py::arg("layout"), py::arg("rank"), py::arg("gen"));
    m.def("random_unitary", &random_unitary, py::arg("d"), py::arg("gen"));
    m.def("random_kraus_set", &random_kraus_set, py::arg("d"), py::arg("m"), py::arg("gen"));

    // fixtures
    m.def("fixture_state", &fixture_state, py::arg("name"),
          py::arg("dims") = std::vector<int>{});
    m.def("fixture_channel", &fixture_channel, py::arg("name"), py::arg("d") = 2,
          py::arg("acting_on") = std::string());

    // optimizer
    m.def("parametrize_unitary", &parametrize_unitary, py::arg("params"));
    m.def(
        "evaluate_objective",
        [](const std::string& chain, const std::string& direction, const KrausSet& base,
           const DensityMatrix& rho, const std::optional<DensityMatrix>& gamma,
           const ComplexMatrix& w) {
            RemixObjective obj{direction_from_name(direction), chain_kind_from_name(chain),
                               base, rho, gamma};
            return evaluate_objective(obj, w);
        },
        py::arg("chain"), py::arg("direction"), py::arg("base"), py::arg("rho"),
        py::arg("gamma"), py::arg("w"));
    m.def(
        "tighten",
        [](const std::string& chain, const std::string& direction, const KrausSet& base,
           const DensityMatrix& rho, const std::optional<DensityMatrix>& gamma, int budget,
           int restarts, std::uint64_t seed) {
            RemixObjective obj{direction_from_name(direction), chain_kind_from_name(chain),
                               base, rho, gamma};
            SeededGenerator gen(seed);
            return tighten(obj, budget, restarts, gen);
        },
        py::arg("chain"), py::arg("direction"), py::arg("base"), py::arg("rho"),
        py::arg("gamma"), py::arg("budget"), py::arg("restarts"), py::arg("seed"));
}
