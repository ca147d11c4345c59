#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctmdp/benchmarks.hpp"
#include "ctmdp/lp.hpp"
#include "ctmdp/lyapunov.hpp"
#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"
#include "ctmdp/simulate.hpp"
#include "ctmdp/structure.hpp"

namespace py = pybind11;
using namespace ctmdp;

namespace {

py::dict validation_to_dict(const ValidationReport& report) {
    py::dict d;
    d["passed"] = report.passed;
    py::list violations;
    for (const auto& v : report.violations) {
        py::dict item;
        item["check"] = v.check;
        item["location"] = v.location;
        item["magnitude"] = v.magnitude;
        violations.append(item);
    }
    d["violations"] = violations;
    return d;
}

} // namespace

PYBIND11_MODULE(_ctmdp, m) {
    m.doc() = "constrained continuous-time MDP solver (occupation-measure LP, "
              "policy extraction, jump-process simulation)";

    py::register_exception<InfeasibleError>(m, "InfeasibleError");

    py::class_<FiniteCtmdp>(m, "FiniteCtmdp")
        .def(py::init<>())
        .def_readwrite("num_states", &FiniteCtmdp::num_states)
        .def_readwrite("actions", &FiniteCtmdp::actions)
        .def_readwrite("rates", &FiniteCtmdp::rates)
        .def_readwrite("reward", &FiniteCtmdp::reward)
        .def_readwrite("costs", &FiniteCtmdp::costs)
        .def_readwrite("bounds", &FiniteCtmdp::bounds)
        .def_readwrite("alpha", &FiniteCtmdp::alpha)
        .def_readwrite("gamma", &FiniteCtmdp::gamma)
        .def("kernel_size", &FiniteCtmdp::kernel_size);

    m.def("parse_model", &parse_finite_ctmdp, py::arg("json_text"));
    m.def("load_model", &load_finite_ctmdp, py::arg("path"));
    m.def("validate", [](const FiniteCtmdp& model) { return validation_to_dict(validate_finite(model)); });
    m.def("q_star", &q_star, py::arg("model"), py::arg("x"));

    py::class_<StationaryPolicy>(m, "StationaryPolicy")
        .def(py::init<>())
        .def_readwrite("probs", &StationaryPolicy::probs)
        .def("is_deterministic", &StationaryPolicy::is_deterministic, py::arg("tol") = 1e-12)
        .def_static("deterministic",
                    [](const FiniteCtmdp& model, const std::vector<int>& choice) {
                        return StationaryPolicy::deterministic(model, choice);
                    })
        .def_static("uniform", &StationaryPolicy::uniform);

    py::class_<OccupationMeasure>(m, "OccupationMeasure")
        .def(py::init<>())
        .def_readwrite("mass", &OccupationMeasure::mass)
        .def("total_mass", &OccupationMeasure::total_mass)
        .def("marginals", &OccupationMeasure::marginals);

    m.def("occupation_of_stationary", &occupation_of_stationary);
    m.def("balance_residual", &balance_residual);
    m.def(
        "value_of_measure",
        [](const FiniteCtmdp& model, const OccupationMeasure& eta, const std::string& which,
           int cost_index) {
            return value_of_measure(model, eta,
                                    which == "reward" ? Criterion::Reward : Criterion::Cost,
                                    cost_index);
        },
        py::arg("model"), py::arg("eta"), py::arg("which") = "reward", py::arg("cost_index") = 0);
    m.def("extract_policy",
          [](const OccupationMeasure& eta) { return extract_policy(eta); });
    m.def("randomization_count", &randomization_count, py::arg("phi"), py::arg("tol") = 1e-9);

    m.def("solve_constrained", [](const FiniteCtmdp& model) {
        const ConstrainedSolution sol = solve_constrained(model);
        py::dict d;
        d["value"] = sol.value;
        d["policy"] = sol.policy;
        d["eta"] = sol.eta;
        d["randomization_count"] = randomization_count(sol.policy);
        return d;
    });
    m.def("solve_unconstrained", [](const FiniteCtmdp& model) {
        const UnconstrainedSolution sol = solve_unconstrained(model);
        return py::make_tuple(sol.policy, sol.value);
    });

    m.def("enumerate_deterministic", [](const FiniteCtmdp& model, std::uint64_t cap) {
        py::list out;
        for (const auto& item : enumerate_deterministic(model, cap))
            out.append(py::make_tuple(item.actions, item.eta));
        return out;
    });
    m.def("decompose_mixture",
          [](const OccupationMeasure& eta, const FiniteCtmdp& model, int n, std::uint64_t cap) {
              const MixtureDecomposition mix = decompose_mixture(eta, model, n, cap);
              py::dict d;
              d["weights"] = mix.weights;
              d["policies"] = mix.policies;
              d["residual"] = mix.residual;
              return d;
          },
          py::arg("eta"), py::arg("model"), py::arg("n_constraints"), py::arg("cap") = 1u << 20);

    m.def("moment_bound", &moment_bound, py::arg("w0"), py::arg("rho"), py::arg("b"), py::arg("t"));
    m.def("value_bound", &value_bound, py::arg("M"), py::arg("w0"), py::arg("b"), py::arg("alpha"),
          py::arg("rho"));
    m.def("truncation_horizon", &truncation_horizon, py::arg("M"), py::arg("w0"), py::arg("b"),
          py::arg("alpha"), py::arg("rho"), py::arg("eps"));
    m.def("check_drift", [](const FiniteCtmdp& model, const std::vector<double>& w, double rho) {
        const DriftReport report = check_drift(model, w, rho);
        py::dict d;
        d["feasible"] = report.feasible;
        d["rho"] = report.rho_used;
        d["b_min"] = report.b_min;
        d["worst_x"] = report.worst_x;
        d["worst_a"] = report.worst_a;
        return d;
    });

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("n", &McEstimate::n)
        .def_readonly("z", &McEstimate::z)
        .def("half_width", &McEstimate::half_width);

    m.def(
        "discounted_value_mc",
        [](const FiniteCtmdp& model, const StationaryPolicy& phi, const std::string& which,
           int cost_index, std::uint64_t n, double horizon, std::uint64_t seed) {
            return discounted_value_mc(model, phi, model.gamma,
                                       which == "reward" ? Criterion::Reward : Criterion::Cost,
                                       cost_index, n, horizon, seed);
        },
        py::arg("model"), py::arg("policy"), py::arg("which") = "reward", py::arg("cost_index") = 0,
        py::arg("n") = 10000, py::arg("horizon") = 20.0, py::arg("seed") = 0);
    m.def(
        "empirical_occupation",
        [](const FiniteCtmdp& model, const StationaryPolicy& phi, std::uint64_t n,
           std::uint64_t seed) { return empirical_occupation(model, phi, model.gamma, n, seed); },
        py::arg("model"), py::arg("policy"), py::arg("n") = 10000, py::arg("seed") = 0);

    py::class_<Example2Coefficients>(m, "Example2Coefficients")
        .def_readonly("l0", &Example2Coefficients::l0)
        .def_readonly("l1_plus", &Example2Coefficients::l1_plus)
        .def_readonly("l1_minus", &Example2Coefficients::l1_minus)
        .def_readonly("l2", &Example2Coefficients::l2);
    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def_readonly("example_id", &ClosedFormSolution::example_id)
        .def_readonly("c2", &ClosedFormSolution::c2)
        .def_readonly("c1_abs", &ClosedFormSolution::c1_abs)
        .def_readonly("c0", &ClosedFormSolution::c0)
        .def_readonly("policy_slope", &ClosedFormSolution::policy_slope)
        .def_readonly("policy_intercept", &ClosedFormSolution::policy_intercept)
        .def_readonly("kappa", &ClosedFormSolution::kappa)
        .def_readonly("coefficients", &ClosedFormSolution::coefficients)
        .def("value", &ClosedFormSolution::value)
        .def("policy", &ClosedFormSolution::policy);

    m.def("example2_coefficients", &example2_coefficients, py::arg("p"), py::arg("delta"),
          py::arg("alpha"));
    m.def("example2_closed_form", &example2_closed_form, py::arg("p"), py::arg("delta"),
          py::arg("alpha"));
    m.def("example3_closed_form", &example3_closed_form, py::arg("beta"), py::arg("p"),
          py::arg("delta"), py::arg("alpha"));

    m.attr("__version__") = "0.1.0";
}
