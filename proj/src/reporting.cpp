#include "contestlab/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace contestlab {

namespace {

OrderedJson real(double x) { return OrderedJson(round_to_digits(x)); }

OrderedJson real_array(const std::vector<double>& xs) {
  OrderedJson arr = OrderedJson::array();
  for (double x : xs) arr.push_back(real(x));
  return arr;
}

OrderedJson side_json(const ProbeSide& side) {
  OrderedJson doc;
  doc["values"] = real_array(side.values);
  doc["forced_profile"] = real_array(side.forced.efforts());
  doc["designated_win_prob"] = real(side.designated_win_prob);
  doc["forced_is_extracting_ne"] = side.forced_is_extracting_ne;
  doc["scan_confirmed"] = side.scan_confirmed;
  doc["scan_found_extraction"] = side.scan_found_extraction;
  doc["certificate"] = certificate_json(side.certificate);
  return doc;
}

[[noreturn]] void field_error(const std::string& field, const std::string& expected) {
  throw ConfigError("config field '" + field + "': expected " + expected);
}

double get_number(const OrderedJson& doc, const std::string& field) {
  if (!doc.at(field).is_number()) field_error(field, "a number");
  return doc.at(field).get<double>();
}

int get_int(const OrderedJson& doc, const std::string& field) {
  if (!doc.at(field).is_number_integer()) field_error(field, "an integer");
  return doc.at(field).get<int>();
}

std::string get_string(const OrderedJson& doc, const std::string& field) {
  if (!doc.at(field).is_string()) field_error(field, "a string");
  return doc.at(field).get<std::string>();
}

std::vector<double> get_number_list(const OrderedJson& doc, const std::string& field) {
  const OrderedJson& node = doc.at(field);
  if (!node.is_array()) field_error(field, "an array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& item : node) {
    if (!item.is_number()) field_error(field, "an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

double round_to_digits(double x, int significant_digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant_digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

OrderedJson certificate_json(const EquilibriumCertificate& cert) {
  OrderedJson doc;
  doc["profile"] = real_array(cert.profile.efforts());
  doc["per_player_regret"] = real_array(cert.per_player_regret);
  doc["max_regret"] = real(cert.max_regret);
  doc["aggregate"] = real(cert.aggregate);
  doc["extraction_ratio"] = real(cert.extraction_ratio);
  doc["epsilon"] = real(cert.epsilon);
  doc["is_epsilon_ne"] = cert.is_epsilon_ne;
  return doc;
}

EquilibriumCertificate certificate_from_json(const OrderedJson& doc) {
  EquilibriumCertificate cert;
  cert.profile = EffortProfile(get_number_list(doc, "profile"));
  cert.per_player_regret = get_number_list(doc, "per_player_regret");
  cert.max_regret = get_number(doc, "max_regret");
  cert.aggregate = get_number(doc, "aggregate");
  cert.extraction_ratio = get_number(doc, "extraction_ratio");
  cert.epsilon = get_number(doc, "epsilon");
  if (!doc.at("is_epsilon_ne").is_boolean()) field_error("is_epsilon_ne", "a boolean");
  cert.is_epsilon_ne = doc.at("is_epsilon_ne").get<bool>();
  return cert;
}

OrderedJson report_json(const ExtractivenessReport& report) {
  OrderedJson doc;
  doc["csf"] = report.csf;
  doc["values"] = real_array(report.values);
  doc["verdict"] = report.verdict;
  doc["epsilon_closed_form"] = real(report.closed_form_epsilon);
  doc["epsilon_scan"] = real(report.scan_epsilon);
  doc["scan"] = OrderedJson{{"per_axis", report.scan_per_axis},
                            {"confirmed", report.scan_confirmed}};
  OrderedJson candidates = OrderedJson::array();
  for (const CandidateResult& c : report.candidates) {
    candidates.push_back(
        OrderedJson{{"label", c.label}, {"certificate", certificate_json(c.certificate)}});
  }
  doc["candidates"] = std::move(candidates);
  OrderedJson witnesses = OrderedJson::array();
  for (const CandidateResult& c : report.strictness_counterwitnesses) {
    witnesses.push_back(
        OrderedJson{{"label", c.label}, {"certificate", certificate_json(c.certificate)}});
  }
  doc["strictness_counterwitnesses"] = std::move(witnesses);
  return doc;
}

OrderedJson probe_json(const ImpossibilityProbe& probe) {
  OrderedJson doc;
  doc["csf"] = probe.csf;
  doc["low"] = side_json(probe.low);
  doc["high"] = side_json(probe.high);
  doc["failing"] = probe.failing;
  doc["contradiction"] = probe.contradiction;
  doc["contradiction_gain"] = real(probe.contradiction_gain);
  return doc;
}

OrderedJson uniqueness_json(const UniquenessScan& scan) {
  OrderedJson doc;
  doc["player_count"] = scan.player_count;
  doc["common_value"] = real(scan.common_value);
  OrderedJson confirmed = OrderedJson::array();
  for (const EquilibriumCertificate& cert : scan.confirmed) {
    confirmed.push_back(certificate_json(cert));
  }
  doc["confirmed"] = std::move(confirmed);
  doc["max_distance"] = real(scan.max_distance);
  doc["all_within_delta"] = scan.all_within_delta;
  OrderedJson rejections = OrderedJson::array();
  for (const SymmetricRejection& r : scan.rejections) {
    rejections.push_back(OrderedJson{{"active_count", r.active_count},
                                     {"profile", real_array(r.profile.efforts())},
                                     {"expected_regret_floor", real(r.expected_regret_floor)},
                                     {"regret", real(r.regret)},
                                     {"rejected", r.rejected}});
  }
  doc["rejections"] = std::move(rejections);
  doc["all_rejected"] = scan.all_rejected;
  return doc;
}

OrderedJson dynamics_json(const DynamicsResult& result) {
  OrderedJson doc;
  OrderedJson steps = OrderedJson::array();
  for (const DynamicsStep& step : result.trajectory) {
    steps.push_back(OrderedJson{{"round", step.round},
                                {"player", step.player},
                                {"efforts", real_array(step.profile.efforts())},
                                {"aggregate", real(aggregate_effort(step.profile))}});
  }
  doc["trajectory"] = std::move(steps);
  doc["terminal"] = certificate_json(result.terminal);
  doc["converged"] = result.converged;
  doc["rounds_used"] = result.rounds_used;
  return doc;
}

std::string dynamics_csv(const DynamicsResult& result) {
  std::ostringstream out;
  const std::size_t n = result.trajectory.front().profile.size();
  out << "round,player";
  for (std::size_t i = 0; i < n; ++i) out << ",effort_" << i;
  out << ",aggregate\n";
  for (const DynamicsStep& step : result.trajectory) {
    out << step.round << ',' << step.player;
    for (std::size_t i = 0; i < n; ++i) {
      out << ',' << format_real(round_to_digits(step.profile[i]));
    }
    out << ',' << format_real(round_to_digits(aggregate_effort(step.profile))) << '\n';
  }
  return out.str();
}

std::string ratio_sweep_csv(int first, int last) {
  if (first < 3 || last < first) {
    throw ConfigError("ratio sweep: need 3 <= first <= last, got " + std::to_string(first) +
                      ".." + std::to_string(last));
  }
  std::ostringstream out;
  out << "a,aggregate_ratio\n";
  for (int a = first; a <= last; ++a) {
    out << a << ',' << format_real(round_to_digits(aggregate_ratio(a))) << '\n';
  }
  return out.str();
}

ExperimentConfig config_from_json(const OrderedJson& doc) {
  if (!doc.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  static const char* known[] = {"csf",    "values",  "profile",       "init",
                                "epsilon", "grid",   "refine",        "delta",
                                "per_axis", "rounds", "seed",         "format",
                                "out",    "scan_per_axis", "sweep_a", "v",
                                "a",      "b",       "lemma_grid"};
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("config: unknown field '" + key + "'");
  }

  ExperimentConfig config;
  if (doc.contains("csf")) config.csf = get_string(doc, "csf");
  if (doc.contains("values")) config.values = get_number_list(doc, "values");
  if (doc.contains("profile")) config.profile = get_number_list(doc, "profile");
  if (doc.contains("init")) config.init = get_number_list(doc, "init");
  if (doc.contains("epsilon")) config.search.epsilon = get_number(doc, "epsilon");
  if (doc.contains("grid")) config.search.grid_points = get_int(doc, "grid");
  if (doc.contains("refine")) config.search.refine_iters = get_int(doc, "refine");
  if (doc.contains("delta")) config.search.neighborhood_radius = get_number(doc, "delta");
  if (doc.contains("per_axis")) config.per_axis = get_int(doc, "per_axis");
  if (doc.contains("rounds")) config.rounds = get_int(doc, "rounds");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      field_error("seed", "a 64-bit unsigned integer");
    }
    config.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("format")) config.format = get_string(doc, "format");
  if (doc.contains("out")) config.out = get_string(doc, "out");
  if (doc.contains("scan_per_axis")) config.scan_per_axis = get_int(doc, "scan_per_axis");
  if (doc.contains("sweep_a")) {
    const OrderedJson& node = doc.at("sweep_a");
    if (!node.is_array() || node.size() != 2 || !node[0].is_number_integer() ||
        !node[1].is_number_integer()) {
      field_error("sweep_a", "an array [first, last] of two integers");
    }
    config.sweep_a = std::array<int, 2>{node[0].get<int>(), node[1].get<int>()};
  }
  if (doc.contains("v")) config.lemma_value = get_number(doc, "v");
  if (doc.contains("a")) config.lemma_a = get_int(doc, "a");
  if (doc.contains("b")) config.lemma_b = get_int(doc, "b");
  if (doc.contains("lemma_grid")) config.lemma_grid = get_int(doc, "lemma_grid");
  return config;
}

ContestGame make_game(const ExperimentConfig& config) {
  if (!config.csf) throw ConfigError("config: 'csf' is required");
  if (!config.values) throw ConfigError("config: 'values' is required");
  ValueProfile values(*config.values);
  CsfSpec csf = parse_csf(*config.csf, values);
  return ContestGame(std::move(values), std::move(csf));
}

}  // namespace contestlab
