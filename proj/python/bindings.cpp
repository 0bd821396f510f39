#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "contestlab/theory.hpp"

namespace py = pybind11;
using namespace contestlab;

namespace {

ValueProfile values_of(const std::vector<double>& values) { return ValueProfile(values); }
EffortProfile efforts_of(const std::vector<double>& efforts) { return EffortProfile(efforts); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Contest success function laboratory: catalog CSF evaluation, payoffs, "
            "brute-force equilibrium verification, and extraction diagnostics.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<CsfSpec>(m, "CsfSpec")
      .def_property_readonly("name", &csf_name)
      .def_readwrite("equality_tolerance", &CsfSpec::equality_tolerance)
      .def_readwrite("frozen_max", &CsfSpec::frozen_max)
      .def("__eq__", [](const CsfSpec& a, const CsfSpec& b) { return a == b; })
      .def("__repr__", [](const CsfSpec& c) { return "CsfSpec(" + csf_name(c) + ")"; });

  m.def("threshold_triple", &threshold_triple, py::arg("designated"), py::arg("challenger"),
        py::arg("fallback"));
  m.def("common_value_indicator", &common_value_indicator);
  m.def("max_value_indicator", &max_value_indicator, py::arg("designated"));
  m.def("power_share", &power_share, py::arg("a"));
  m.def("lottery_baseline", &lottery_baseline);
  m.def(
      "parse_csf",
      [](const std::string& name, const std::vector<double>& values) {
        return parse_csf(name, values_of(values));
      },
      py::arg("name"), py::arg("values"));

  py::class_<ContestGame>(m, "ContestGame")
      .def(py::init([](const std::vector<double>& values, const CsfSpec& csf) {
             return ContestGame(values_of(values), csf);
           }),
           py::arg("values"), py::arg("csf"))
      .def_property_readonly("values",
                             [](const ContestGame& g) { return g.values().values(); })
      .def_property_readonly("csf", &ContestGame::csf)
      .def_property_readonly("player_count", &ContestGame::player_count);

  m.def(
      "max_value",
      [](const std::vector<double>& values) { return max_value(values_of(values)); },
      py::arg("values"));
  m.def(
      "argmax_set",
      [](const std::vector<double>& values) { return argmax_set(values_of(values)); },
      py::arg("values"));
  m.def(
      "is_common_value",
      [](const std::vector<double>& values) { return is_common_value(values_of(values)); },
      py::arg("values"));
  m.def(
      "aggregate_effort",
      [](const std::vector<double>& efforts) { return aggregate_effort(efforts_of(efforts)); },
      py::arg("efforts"));
  m.def(
      "evaluate",
      [](const CsfSpec& csf, const std::vector<double>& values,
         const std::vector<double>& efforts) {
        return evaluate(csf, values_of(values), efforts_of(efforts)).probs();
      },
      py::arg("csf"), py::arg("values"), py::arg("efforts"));
  m.def(
      "critical_points",
      [](const CsfSpec& csf, const std::vector<double>& values, std::size_t player) {
        return critical_points(csf, values_of(values), player);
      },
      py::arg("csf"), py::arg("values"), py::arg("player"));
  m.def(
      "payoff",
      [](const ContestGame& game, const std::vector<double>& efforts) {
        return payoff(game, efforts_of(efforts));
      },
      py::arg("game"), py::arg("efforts"));

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("grid_points", &SearchConfig::grid_points)
      .def_readwrite("refine_iters", &SearchConfig::refine_iters)
      .def_readwrite("epsilon", &SearchConfig::epsilon)
      .def_readwrite("neighborhood_radius", &SearchConfig::neighborhood_radius);

  py::class_<EquilibriumCertificate>(m, "EquilibriumCertificate")
      .def_property_readonly("profile",
                             [](const EquilibriumCertificate& c) { return c.profile.efforts(); })
      .def_readonly("per_player_regret", &EquilibriumCertificate::per_player_regret)
      .def_readonly("max_regret", &EquilibriumCertificate::max_regret)
      .def_readonly("aggregate", &EquilibriumCertificate::aggregate)
      .def_readonly("extraction_ratio", &EquilibriumCertificate::extraction_ratio)
      .def_readonly("epsilon", &EquilibriumCertificate::epsilon)
      .def_readonly("is_epsilon_ne", &EquilibriumCertificate::is_epsilon_ne);

  m.def(
      "best_response",
      [](const ContestGame& game, std::size_t player, const std::vector<double>& efforts,
         const SearchConfig& cfg) {
        const BestResponse br = best_response(game, player, efforts_of(efforts), cfg);
        return py::make_tuple(br.effort, br.payoff);
      },
      py::arg("game"), py::arg("player"), py::arg("efforts"),
      py::arg("config") = SearchConfig{});
  m.def(
      "regret",
      [](const ContestGame& game, const std::vector<double>& efforts, const SearchConfig& cfg) {
        return regret(game, efforts_of(efforts), cfg);
      },
      py::arg("game"), py::arg("efforts"), py::arg("config") = SearchConfig{});
  m.def(
      "verify_equilibrium",
      [](const ContestGame& game, const std::vector<double>& efforts, const SearchConfig& cfg) {
        return verify_equilibrium(game, efforts_of(efforts), cfg);
      },
      py::arg("game"), py::arg("efforts"), py::arg("config") = SearchConfig{});
  m.def("grid_scan", &grid_scan, py::arg("game"), py::arg("config"), py::arg("per_axis_points"));

  py::class_<DynamicsResult>(m, "DynamicsResult")
      .def_property_readonly("trajectory",
                             [](const DynamicsResult& r) {
                               py::list steps;
                               for (const DynamicsStep& s : r.trajectory) {
                                 steps.append(py::make_tuple(s.round, s.player,
                                                             s.profile.efforts()));
                               }
                               return steps;
                             })
      .def_readonly("terminal", &DynamicsResult::terminal)
      .def_readonly("converged", &DynamicsResult::converged)
      .def_readonly("rounds_used", &DynamicsResult::rounds_used);

  m.def(
      "best_response_dynamics",
      [](const ContestGame& game, const std::vector<double>& init, int rounds,
         const SearchConfig& cfg) {
        return best_response_dynamics(game, efforts_of(init), rounds, cfg);
      },
      py::arg("game"), py::arg("init"), py::arg("rounds"), py::arg("config") = SearchConfig{});

  m.def(
      "threshold_triple_equilibrium",
      [](const std::vector<double>& values) {
        return threshold_triple_equilibrium(values_of(values)).efforts();
      },
      py::arg("values"));
  m.def(
      "common_indicator_equilibrium",
      [](const std::vector<double>& values) {
        return common_indicator_equilibrium(values_of(values)).efforts();
      },
      py::arg("values"));
  m.def(
      "max_indicator_equilibria",
      [](const std::vector<double>& values) {
        const auto [extracting, zero] = max_indicator_equilibria(values_of(values));
        return py::make_tuple(extracting.efforts(), zero.efforts());
      },
      py::arg("values"));
  m.def(
      "power_equilibrium",
      [](const std::vector<double>& values, int a, const std::vector<std::size_t>& active) {
        return power_equilibrium(values_of(values), a, ActiveSet(active)).efforts();
      },
      py::arg("values"), py::arg("a"), py::arg("active"));
  m.def(
      "power_partial_equilibrium",
      [](const std::vector<double>& values, int a, const std::vector<std::size_t>& active) {
        return power_partial_equilibrium(values_of(values), a, ActiveSet(active)).efforts();
      },
      py::arg("values"), py::arg("a"), py::arg("active"));

  m.def("symmetric_share_effort", &symmetric_share_effort, py::arg("value"), py::arg("a"),
        py::arg("b"));
  m.def("symmetric_share_payoff", &symmetric_share_payoff, py::arg("value"), py::arg("a"),
        py::arg("b"), py::arg("effort"));
  m.def("symmetric_share_effort_check", &symmetric_share_effort_check, py::arg("value"),
        py::arg("a"), py::arg("b"), py::arg("grid_points") = 100000);
  m.def("aggregate_ratio", &aggregate_ratio, py::arg("a"));

  py::class_<CandidateResult>(m, "CandidateResult")
      .def_readonly("label", &CandidateResult::label)
      .def_readonly("certificate", &CandidateResult::certificate);

  py::class_<ExtractivenessReport>(m, "ExtractivenessReport")
      .def_readonly("csf", &ExtractivenessReport::csf)
      .def_readonly("values", &ExtractivenessReport::values)
      .def_readonly("verdict", &ExtractivenessReport::verdict)
      .def_readonly("candidates", &ExtractivenessReport::candidates)
      .def_readonly("strictness_counterwitnesses",
                    &ExtractivenessReport::strictness_counterwitnesses)
      .def_readonly("closed_form_epsilon", &ExtractivenessReport::closed_form_epsilon)
      .def_readonly("scan_epsilon", &ExtractivenessReport::scan_epsilon)
      .def_readonly("scan_per_axis", &ExtractivenessReport::scan_per_axis)
      .def_readonly("scan_confirmed", &ExtractivenessReport::scan_confirmed);

  m.def("extractiveness_report", &extractiveness_report, py::arg("game"), py::arg("config"),
        py::arg("scan_per_axis") = 0);

  py::class_<ProbeSide>(m, "ProbeSide")
      .def_readonly("values", &ProbeSide::values)
      .def_property_readonly("forced", [](const ProbeSide& s) { return s.forced.efforts(); })
      .def_readonly("certificate", &ProbeSide::certificate)
      .def_readonly("designated_win_prob", &ProbeSide::designated_win_prob)
      .def_readonly("forced_is_extracting_ne", &ProbeSide::forced_is_extracting_ne)
      .def_readonly("scan_confirmed", &ProbeSide::scan_confirmed)
      .def_readonly("scan_found_extraction", &ProbeSide::scan_found_extraction);

  py::class_<ImpossibilityProbe>(m, "ImpossibilityProbe")
      .def_readonly("csf", &ImpossibilityProbe::csf)
      .def_readonly("low", &ImpossibilityProbe::low)
      .def_readonly("high", &ImpossibilityProbe::high)
      .def_readonly("failing", &ImpossibilityProbe::failing)
      .def_readonly("contradiction", &ImpossibilityProbe::contradiction)
      .def_readonly("contradiction_gain", &ImpossibilityProbe::contradiction_gain);

  m.def(
      "extraction_impossibility_probe",
      [](const std::function<CsfSpec(const std::vector<double>&)>& family,
         const SearchConfig& cfg, int scan_per_axis, std::size_t player_count) {
        return extraction_impossibility_probe(
            [&family](const ValueProfile& v) { return family(v.values()); }, cfg,
            scan_per_axis, player_count);
      },
      py::arg("family"), py::arg("config") = SearchConfig{}, py::arg("scan_per_axis") = 0,
      py::arg("player_count") = 2);

  py::class_<SymmetricRejection>(m, "SymmetricRejection")
      .def_readonly("active_count", &SymmetricRejection::active_count)
      .def_property_readonly("profile",
                             [](const SymmetricRejection& r) { return r.profile.efforts(); })
      .def_readonly("expected_regret_floor", &SymmetricRejection::expected_regret_floor)
      .def_readonly("regret", &SymmetricRejection::regret)
      .def_readonly("rejected", &SymmetricRejection::rejected);

  py::class_<UniquenessScan>(m, "UniquenessScan")
      .def_readonly("player_count", &UniquenessScan::player_count)
      .def_readonly("common_value", &UniquenessScan::common_value)
      .def_readonly("confirmed", &UniquenessScan::confirmed)
      .def_readonly("max_distance", &UniquenessScan::max_distance)
      .def_readonly("all_within_delta", &UniquenessScan::all_within_delta)
      .def_readonly("rejections", &UniquenessScan::rejections)
      .def_readonly("all_rejected", &UniquenessScan::all_rejected);

  m.def("quadratic_share_uniqueness_scan", &quadratic_share_uniqueness_scan,
        py::arg("player_count"), py::arg("common_value"), py::arg("config"),
        py::arg("per_axis_points"));

#ifdef CONTESTLAB_VERSION
  m.attr("__version__") = CONTESTLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
