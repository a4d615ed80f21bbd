#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infoprice/binary_menu.hpp"
#include "infoprice/continuous_menu.hpp"
#include "infoprice/error.hpp"
#include "infoprice/oracle.hpp"

namespace py = pybind11;
using namespace infoprice;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pricing information sold to a competitor: menus, baselines, and oracles.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ZeroEvidenceError>(m, "ZeroEvidenceError", error.ptr());
    py::register_exception<IrregularDistributionError>(m, "IrregularDistributionError", error.ptr());
    py::register_exception<BracketError>(m, "BracketError", error.ptr());
    py::register_exception<QuadratureError>(m, "QuadratureError", error.ptr());

    py::class_<Belief>(m, "Belief")
        .def(py::init<double>(), py::arg("p0"))
        .def_property_readonly("p0", &Belief::p0)
        .def_property_readonly("p1", &Belief::p1)
        .def("__float__", &Belief::p0)
        .def("__repr__", [](const Belief& b) { return "Belief(" + std::to_string(b.p0()) + ")"; });
    py::implicitly_convertible<double, Belief>();

    py::class_<Informativeness>(m, "Informativeness")
        .def(py::init<double>(), py::arg("value"))
        .def_property_readonly("value", &Informativeness::value)
        .def("__float__", &Informativeness::value);
    py::implicitly_convertible<double, Informativeness>();

    py::class_<GameConfig>(m, "GameConfig")
        .def(py::init<double, Belief>(), py::arg("tau"), py::arg("seller_belief"))
        .def_property_readonly("tau", &GameConfig::tau)
        .def_property_readonly("v_s", &GameConfig::v_s);

    py::class_<DirectRule>(m, "DirectRule")
        .def(py::init<double, double>(), py::arg("i0"), py::arg("i1"))
        .def_property_readonly("i0", &DirectRule::i0)
        .def_property_readonly("i1", &DirectRule::i1);

    m.def("no_info_value", &no_info_value, py::arg("v_b"));
    m.def("concentrate", &concentrate, py::arg("I"));
    m.def("informativeness", [](const DirectRule& r) { return informativeness(r).value(); }, py::arg("rule"));
    m.def("gain", [](Informativeness I, Belief v) { return gain(I, v); }, py::arg("I"), py::arg("v_b"));
    m.def("externality_cost", &externality_cost, py::arg("I"), py::arg("cfg"));
    m.def("obedience_check", &obedience_check, py::arg("rule"), py::arg("v_b"));
    m.def(
        "feasible_band",
        [](Belief v) {
            const FeasibleBand b = feasible_band(v);
            return py::make_tuple(b.lo, b.hi);
        },
        py::arg("v_b"));

    py::class_<BinaryScenario>(m, "BinaryScenario")
        .def(py::init<Belief, Belief, double, GameConfig>(), py::arg("v_low"), py::arg("v_high"), py::arg("phi"),
             py::arg("cfg"))
        .def_property_readonly("phi", &BinaryScenario::phi)
        .def("congruent", [](const BinaryScenario& s) { return classify(s) == Congruence::congruent; });

    py::class_<BinaryMenu>(m, "BinaryMenu")
        .def_property_readonly("I_low", [](const BinaryMenu& b) { return b.I_low.value(); })
        .def_property_readonly("I_high", [](const BinaryMenu& b) { return b.I_high.value(); })
        .def_readonly("t_low", &BinaryMenu::t_low)
        .def_readonly("t_high", &BinaryMenu::t_high)
        .def_readonly("profit", &BinaryMenu::expected_profit)
        .def_property_readonly("regime", &regime_label);

    m.def("solve_binary", &solve, py::arg("scenario"));
    m.def(
        "boundaries",
        [](const BinaryScenario& s) {
            const Boundaries b = boundaries(s);
            return py::make_tuple(b.tau_low, b.tau_high);
        },
        py::arg("scenario"));
    m.def("noncongruent_allocation_bound", &noncongruent_allocation_bound, py::arg("scenario"));
    m.def("brute_force_binary", &brute_force_binary, py::arg("scenario"), py::arg("grid_n") = 201);

    py::class_<TypeDistribution>(m, "TypeDistribution")
        .def(py::init<std::string, TypeDistribution::Fn, TypeDistribution::Fn>(), py::arg("name"), py::arg("density"),
             py::arg("cdf"))
        .def_static("uniform", &TypeDistribution::uniform)
        .def_static("linear", &TypeDistribution::linear, py::arg("slope"))
        .def_static("truncated_normal", &TypeDistribution::truncated_normal, py::arg("mean"), py::arg("sd"))
        .def_static("beta", &TypeDistribution::beta, py::arg("a"), py::arg("b"))
        .def_static("bimodal", &TypeDistribution::bimodal, py::arg("mean_a"), py::arg("mean_b"), py::arg("sd"),
                    py::arg("weight"))
        .def("density", &TypeDistribution::density)
        .def("cdf", &TypeDistribution::cdf)
        .def_property_readonly("name", &TypeDistribution::name);

    py::class_<StepMenu>(m, "StepMenu")
        .def_readonly("v_lo", &StepMenu::v_lo)
        .def_readonly("v_hi", &StepMenu::v_hi)
        .def_readonly("lambda_star", &StepMenu::lambda_star)
        .def_property_readonly("no_information",
                               [](const StepMenu& s) { return s.regime == MenuRegime::no_information; });

    m.def("tau_prime", &tau_prime, py::arg("cfg"));
    m.def("regularity_check", &regularity_check, py::arg("dist"), py::arg("cfg"), py::arg("grid_n") = 1001);
    m.def(
        "solve_dual",
        [](const TypeDistribution& d, const GameConfig& cfg, bool fast_path) {
            DualOptions opts;
            opts.closed_form_fast_path = fast_path;
            return solve_dual(d, cfg, opts);
        },
        py::arg("dist"), py::arg("cfg"), py::arg("closed_form_fast_path") = true);
    m.def("allocation", [](const StepMenu& s, Belief v) { return allocation(s, v).value(); }, py::arg("menu"),
          py::arg("v_b"));
    m.def("transfer", &transfer, py::arg("menu"), py::arg("v_b"));
    m.def("rent", &rent, py::arg("menu"), py::arg("v_b"));
    m.def("expected_profit", &expected_profit, py::arg("menu"), py::arg("dist"), py::arg("cfg"));
    m.def(
        "profit_baselines",
        [](const TypeDistribution& d, const GameConfig& cfg) {
            const ProfitBaselines b = profit_baselines(d, cfg);
            py::dict out;
            out["versioning"] = b.versioning;
            out["full_info"] = b.full_info;
            out["no_info"] = b.no_info;
            return out;
        },
        py::arg("dist"), py::arg("cfg"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("label", &OracleReport::label)
        .def_readonly("closed_form", &OracleReport::closed_form)
        .def_readonly("estimate", &OracleReport::estimate)
        .def_readonly("std_error", &OracleReport::std_error)
        .def_readonly("passed", &OracleReport::pass)
        .def("to_json", &to_json_line);

    // The Monte-Carlo loops run without the GIL.
    m.def(
        "mc_gain",
        [](Informativeness I, Belief v, std::uint64_t samples, std::uint64_t seed) {
            py::gil_scoped_release release;
            return mc_gain(I, v, {samples, seed});
        },
        py::arg("I"), py::arg("v_b"), py::arg("samples") = 1'000'000, py::arg("seed") = 0);
    m.def(
        "mc_cost",
        [](Informativeness I, const GameConfig& cfg, std::uint64_t samples, std::uint64_t seed) {
            py::gil_scoped_release release;
            return mc_cost(I, cfg, {samples, seed});
        },
        py::arg("I"), py::arg("cfg"), py::arg("samples") = 1'000'000, py::arg("seed") = 0);
    m.def("brute_force_continuous", &brute_force_continuous, py::arg("dist"), py::arg("cfg"),
          py::arg("threshold_grid_n") = 401, py::arg("levels") = 5);
}
