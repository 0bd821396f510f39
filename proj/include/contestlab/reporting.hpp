#ifndef CONTESTLAB_REPORTING_HPP
#define CONTESTLAB_REPORTING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contestlab/theory.hpp"

namespace contestlab {

using OrderedJson = nlohmann::ordered_json;

// Every real emitted by a report is first rounded to 12 significant digits,
// then printed shortest-round-trip, which keeps repeated runs byte-identical.
double round_to_digits(double x, int significant_digits = 12);
std::string format_real(double x);

OrderedJson certificate_json(const EquilibriumCertificate& cert);
EquilibriumCertificate certificate_from_json(const OrderedJson& doc);

OrderedJson report_json(const ExtractivenessReport& report);
OrderedJson probe_json(const ImpossibilityProbe& probe);
OrderedJson uniqueness_json(const UniquenessScan& scan);
OrderedJson dynamics_json(const DynamicsResult& result);

/// Trajectory rows: round,player,effort_<i>...,aggregate. The initial profile
/// is row 0 with player -1.
std::string dynamics_csv(const DynamicsResult& result);

/// Rows of (a, aggregate_ratio(a)) for a in [first, last].
std::string ratio_sweep_csv(int first, int last);

/// Experiment description shared by every subcommand: a JSON config file
/// provides defaults, command-line flags override individual fields.
struct ExperimentConfig {
  std::optional<std::string> csf;
  std::optional<std::vector<double>> values;
  std::optional<std::vector<double>> profile;
  std::optional<std::vector<double>> init;
  SearchConfig search;
  int per_axis = 201;
  int rounds = 100;
  std::uint64_t seed = 0;
  std::optional<std::string> format;
  std::string out;
  int scan_per_axis = 0;
  std::optional<std::array<int, 2>> sweep_a;
  double lemma_value = 1.0;
  int lemma_a = 2;
  int lemma_b = 2;
  int lemma_grid = 100000;
};

/// Parses a config document, rejecting unknown fields and mistyped values
/// with a field-addressed ConfigError.
ExperimentConfig config_from_json(const OrderedJson& doc);

/// Builds the admissible game described by the config (csf + values required).
ContestGame make_game(const ExperimentConfig& config);

}  // namespace contestlab

#endif  // CONTESTLAB_REPORTING_HPP
