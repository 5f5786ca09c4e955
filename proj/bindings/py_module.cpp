#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relaywise/emit.hpp"
#include "relaywise/oracle.hpp"
#include "relaywise/scenario.hpp"

namespace py = pybind11;
using namespace relaywise;

PYBIND11_MODULE(_relaywise, m) {
    m.doc() = "Relay power allocation toolkit: water-filling allocators for "
              "RDF/NDF/AF/CF relaying and hybrid strategy selection.";

    m.def("to_linear", &to_linear, py::arg("value_db"));

    py::enum_<Strategy>(m, "Strategy")
        .value("DIRECT", Strategy::Direct)
        .value("RDF", Strategy::Rdf)
        .value("NDF", Strategy::Ndf)
        .value("AF", Strategy::Af)
        .value("CF", Strategy::Cf);

    py::enum_<UserClass>(m, "UserClass")
        .value("HIGH_POTENTIAL", UserClass::HighPotential)
        .value("LOW_POTENTIAL", UserClass::LowPotential)
        .value("NONRELAYED", UserClass::Nonrelayed);

    py::enum_<Mode>(m, "Mode")
        .value("DIRECT", Mode::Direct)
        .value("RDF", Mode::Rdf)
        .value("NDF", Mode::Ndf)
        .value("AF", Mode::Af)
        .value("CF", Mode::Cf)
        .value("HYBRID_NORSS", Mode::HybridNorss)
        .value("HYBRID_EXHAUSTIVE", Mode::HybridExhaustive);

    py::class_<LinkBudget>(m, "LinkBudget")
        .def(py::init([](double direct_snr, double source_relay_snr, double relay_dest_gain) {
                 LinkBudget l{direct_snr, source_relay_snr, relay_dest_gain};
                 l.validate();
                 return l;
             }),
             py::arg("direct_snr"), py::arg("source_relay_snr"), py::arg("relay_dest_gain"))
        .def_readonly("direct_snr", &LinkBudget::direct_snr)
        .def_readonly("source_relay_snr", &LinkBudget::source_relay_snr)
        .def_readonly("relay_dest_gain", &LinkBudget::relay_dest_gain);

    py::class_<LinkDerived>(m, "LinkDerived")
        .def_readonly("df_upper", &LinkDerived::df_upper)
        .def_readonly("rdf_base", &LinkDerived::rdf_base)
        .def_readonly("rdf_cap", &LinkDerived::rdf_cap)
        .def_readonly("ndf_base", &LinkDerived::ndf_base)
        .def_readonly("ndf_cap", &LinkDerived::ndf_cap)
        .def_readonly("af_a", &LinkDerived::af_a)
        .def_readonly("af_b", &LinkDerived::af_b)
        .def_readonly("cf_x", &LinkDerived::cf_x)
        .def_readonly("cf_y", &LinkDerived::cf_y)
        .def_readonly("thre2", &LinkDerived::thre2);

    m.def("derive", &derive, py::arg("link"), py::arg("prefactor") = 0.5);
    m.def("capacity_direct", &capacity_direct, py::arg("link"), py::arg("prefactor"));
    m.def("df_upper_bound", &df_upper_bound, py::arg("link"), py::arg("prefactor"));
    m.def("capacity_rdf", &capacity_rdf, py::arg("link"), py::arg("relay_power"), py::arg("prefactor"));
    m.def("capacity_ndf", &capacity_ndf, py::arg("link"), py::arg("relay_power"), py::arg("prefactor"));
    m.def("capacity_af", &capacity_af, py::arg("link"), py::arg("relay_power"), py::arg("prefactor"));
    m.def("capacity_cf", &capacity_cf, py::arg("link"), py::arg("relay_power"), py::arg("prefactor"));
    m.def("cf_compression_noise", &cf_compression_noise, py::arg("link"), py::arg("relay_power"));
    m.def("user_capacity", &user_capacity, py::arg("link"), py::arg("strategy"),
          py::arg("relay_power"), py::arg("prefactor"));
    m.def("switch_cost", &switch_cost, py::arg("link"));

    py::class_<SourceNode>(m, "SourceNode")
        .def(py::init([](std::string id, const LinkBudget& link) {
                 return SourceNode{std::move(id), link};
             }),
             py::arg("id"), py::arg("link"))
        .def_readonly("id", &SourceNode::id)
        .def_readonly("link", &SourceNode::link);

    py::class_<RelayGroup>(m, "RelayGroup")
        .def(py::init([](std::string id, double total_power, std::vector<SourceNode> users) {
                 RelayGroup g{std::move(id), total_power, std::move(users)};
                 g.validate();
                 return g;
             }),
             py::arg("id"), py::arg("total_power"), py::arg("users"))
        .def_readonly("id", &RelayGroup::id)
        .def_readonly("total_power", &RelayGroup::total_power)
        .def_readonly("users", &RelayGroup::users);

    py::class_<Allocation>(m, "Allocation")
        .def_readonly("strategy", &Allocation::strategy)
        .def_readonly("powers", &Allocation::powers)
        .def_readonly("water_level", &Allocation::water_level)
        .def_readonly("classes", &Allocation::classes)
        .def_readonly("user_strategy", &Allocation::user_strategy)
        .def_readonly("user_capacity", &Allocation::user_capacity)
        .def_readonly("sum_capacity", &Allocation::sum_capacity)
        .def_readonly("slack", &Allocation::slack);

    m.def("allocate_direct", &allocate_direct, py::arg("group"), py::arg("prefactor"));
    m.def("allocate_rdf", &allocate_rdf, py::arg("group"), py::arg("prefactor"));
    m.def("allocate_ndf", &allocate_ndf, py::arg("group"), py::arg("prefactor"));
    m.def("allocate_af", &allocate_af, py::arg("group"), py::arg("prefactor"));
    m.def("allocate_cf", &allocate_cf, py::arg("group"), py::arg("prefactor"));
    m.def("classify_user", &classify_user, py::arg("link"), py::arg("power"),
          py::arg("water_level"), py::arg("strategy"));

    py::class_<Partition>(m, "Partition")
        .def(py::init([](std::set<std::string> ndf, std::set<std::string> cf) {
                 return Partition{std::move(ndf), std::move(cf)};
             }),
             py::arg("ndf_set"), py::arg("cf_set"))
        .def_readonly("ndf_set", &Partition::ndf_set)
        .def_readonly("cf_set", &Partition::cf_set);

    py::class_<TraceStep>(m, "TraceStep")
        .def_readonly("action", &TraceStep::action)
        .def_readonly("user", &TraceStep::user)
        .def_readonly("accepted", &TraceStep::accepted)
        .def_readonly("sum_before", &TraceStep::sum_before)
        .def_readonly("sum_after", &TraceStep::sum_after);

    py::class_<HybridResult>(m, "HybridResult")
        .def_readonly("partition", &HybridResult::partition)
        .def_readonly("allocation", &HybridResult::allocation)
        .def_readonly("trace", &HybridResult::trace)
        .def_readonly("ndf_strict", &HybridResult::ndf_strict);

    m.def("allocate_partition", &allocate_partition, py::arg("group"), py::arg("partition"),
          py::arg("prefactor"));
    m.def("norss", &norss, py::arg("group"), py::arg("prefactor"));
    m.def("exhaustive_hybrid", &exhaustive_hybrid, py::arg("group"), py::arg("prefactor"));

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("best_powers", &OracleReport::best_powers)
        .def_readonly("best_sum_capacity", &OracleReport::best_sum_capacity)
        .def_readonly("grid_resolution", &OracleReport::grid_resolution)
        .def_readonly("refined", &OracleReport::refined)
        .def_readonly("kkt_violations", &OracleReport::kkt_violations);

    m.def("grid_maximize", &grid_maximize, py::arg("group"), py::arg("assignment"),
          py::arg("budget"), py::arg("prefactor"), py::arg("resolution") = 0);
    m.def("kkt_check", &kkt_check, py::arg("group"), py::arg("allocation"),
          py::arg("fd_step") = 0.0);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("relays", &Scenario::relays)
        .def_readonly("user_count", &Scenario::user_count)
        .def_readonly("prefactor", &Scenario::prefactor)
        .def_readonly("fingerprint", &Scenario::fingerprint);

    py::class_<RelaySolve>(m, "RelaySolve")
        .def_readonly("relay_id", &RelaySolve::relay_id)
        .def_readonly("alloc", &RelaySolve::alloc)
        .def_readonly("partition", &RelaySolve::partition);

    py::class_<NetworkResult>(m, "NetworkResult")
        .def_readonly("relays", &NetworkResult::relays)
        .def_readonly("sum_capacity", &NetworkResult::sum_capacity);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("budgets", &SweepResult::budgets)
        .def_readonly("modes", &SweepResult::modes)
        .def_readonly("series", &SweepResult::series)
        .def_readonly("fingerprint", &SweepResult::fingerprint)
        .def_readonly("log_spacing", &SweepResult::log_spacing);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("name") = "<string>");
    m.def(
        "solve_network",
        [](const Scenario& sc, Mode mode, std::optional<double> budget) {
            return solve_network(sc, mode, budget);
        },
        py::arg("scenario"), py::arg("mode"), py::arg("budget") = std::nullopt);
    m.def("sweep", &sweep, py::arg("scenario"), py::arg("modes"), py::arg("budget_min"),
          py::arg("budget_max"), py::arg("points"), py::arg("log_spacing") = false);
    m.def("sweep_csv", [](const SweepResult& r, const Scenario& sc) {
        std::ostringstream os;
        write_sweep_csv(r, sc, os);
        return os.str();
    });
    m.def("sweep_svg", [](const SweepResult& r) {
        std::ostringstream os;
        write_sweep_svg(r, os);
        return os.str();
    });

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
}
