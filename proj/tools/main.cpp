// contestlab CLI: evaluate catalog CSFs, verify equilibrium certificates,
// scan for equilibria, build extractiveness reports, run best-response
// dynamics, and check the closed-form share maximizer.
//
// Exit codes: 0 success/verified, 1 verification failed, 2 configuration
// error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contestlab/reporting.hpp"

namespace {

using namespace contestlab;

struct Flags {
  std::string config_path;
  std::string csf;
  std::vector<double> values;
  std::vector<double> profile;
  std::vector<double> init;
  double epsilon = 0.0;
  int grid = 0;
  int refine = 0;
  double delta = 0.0;
  int per_axis = 0;
  int rounds = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  int scan_axis = 0;
  std::vector<int> sweep_a;
  double lemma_v = 0.0;
  int lemma_a = 0;
  int lemma_b = 0;
  int lemma_grid = 0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* csf_opt = nullptr;
  CLI::Option* values_opt = nullptr;
  CLI::Option* profile_opt = nullptr;
  CLI::Option* init_opt = nullptr;
  CLI::Option* epsilon_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  CLI::Option* refine_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* per_axis_opt = nullptr;
  CLI::Option* rounds_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* scan_axis_opt = nullptr;
  CLI::Option* sweep_a_opt = nullptr;
  CLI::Option* lemma_v_opt = nullptr;
  CLI::Option* lemma_a_opt = nullptr;
  CLI::Option* lemma_b_opt = nullptr;
  CLI::Option* lemma_grid_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  f.config_opt = cmd->add_option("--config", f.config_path,
                                 "JSON config file; flags override its fields");
  f.csf_opt = cmd->add_option(
      "--csf", f.csf,
      "CSF name: threshold-triple, common-indicator, max-indicator, power:a=<int>, lottery");
  f.values_opt =
      cmd->add_option("--values", f.values, "prize value per contestant")->delimiter(',');
  f.profile_opt =
      cmd->add_option("--profile", f.profile, "effort per contestant")->delimiter(',');
  f.epsilon_opt = cmd->add_option("--epsilon", f.epsilon, "regret tolerance (default 1e-6)");
  f.grid_opt =
      cmd->add_option("--grid", f.grid, "deviation-search grid points (default 2001)");
  f.refine_opt =
      cmd->add_option("--refine", f.refine, "golden-section refinement steps (default 60)");
  f.delta_opt = cmd->add_option("--delta", f.delta,
                                "uniqueness-scan neighborhood radius (default 1e-3)");
  f.seed_opt = cmd->add_option("--seed", f.seed, "seed for randomized inputs (default 0)");
  f.format_opt = cmd->add_option("--format", f.format, "output format")
                     ->check(CLI::IsMember({"json", "csv", "table"}));
  f.out_opt = cmd->add_option("--out", f.out, "write output to this file instead of stdout");
}

ExperimentConfig resolve_config(const Flags& f) {
  ExperimentConfig config;
  if (f.config_opt->count()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot open config file: " + f.config_path);
    OrderedJson doc;
    try {
      doc = OrderedJson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config file " + f.config_path + ": " + e.what());
    }
    config = config_from_json(doc);
  }
  if (f.csf_opt->count()) config.csf = f.csf;
  if (f.values_opt->count()) config.values = f.values;
  if (f.profile_opt && f.profile_opt->count()) config.profile = f.profile;
  if (f.init_opt && f.init_opt->count()) config.init = f.init;
  if (f.epsilon_opt->count()) config.search.epsilon = f.epsilon;
  if (f.grid_opt->count()) config.search.grid_points = f.grid;
  if (f.refine_opt->count()) config.search.refine_iters = f.refine;
  if (f.delta_opt->count()) config.search.neighborhood_radius = f.delta;
  if (f.per_axis_opt && f.per_axis_opt->count()) config.per_axis = f.per_axis;
  if (f.rounds_opt && f.rounds_opt->count()) config.rounds = f.rounds;
  if (f.seed_opt->count()) config.seed = f.seed;
  if (f.format_opt->count()) config.format = f.format;
  if (f.out_opt->count()) config.out = f.out;
  if (f.scan_axis_opt && f.scan_axis_opt->count()) config.scan_per_axis = f.scan_axis;
  if (f.sweep_a_opt && f.sweep_a_opt->count()) {
    if (f.sweep_a.size() != 2) {
      throw ConfigError("--sweep-a expects two integers: first:last");
    }
    config.sweep_a = std::array<int, 2>{f.sweep_a[0], f.sweep_a[1]};
  }
  if (f.lemma_v_opt && f.lemma_v_opt->count()) config.lemma_value = f.lemma_v;
  if (f.lemma_a_opt && f.lemma_a_opt->count()) config.lemma_a = f.lemma_a;
  if (f.lemma_b_opt && f.lemma_b_opt->count()) config.lemma_b = f.lemma_b;
  if (f.lemma_grid_opt && f.lemma_grid_opt->count()) config.lemma_grid = f.lemma_grid;
  validate_search_config(config.search);
  return config;
}

std::string pick_format(const ExperimentConfig& config, const std::string& fallback) {
  return config.format ? *config.format : fallback;
}

void emit(const std::string& text, const ExperimentConfig& config) {
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.out, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + config.out);
  out << text;
}

EffortProfile required_profile(const ExperimentConfig& config, const ContestGame& game) {
  if (!config.profile) throw ConfigError("config: 'profile' is required");
  EffortProfile profile(*config.profile);
  if (profile.size() != game.player_count()) {
    throw ConfigError("profile: length " + std::to_string(profile.size()) +
                      " does not match contestant count " +
                      std::to_string(game.player_count()));
  }
  return profile;
}

std::string join_reals(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(round_to_digits(xs[i]));
  }
  return out;
}

int run_eval(const ExperimentConfig& config) {
  const ContestGame game = make_game(config);
  const EffortProfile profile = required_profile(config, game);
  const WinProbabilities probs = evaluate(game.csf(), game.values(), profile);
  const std::vector<double> utilities = payoff(game, profile);
  const double aggregate = aggregate_effort(profile);

  const std::string format = pick_format(config, "table");
  std::ostringstream out;
  if (format == "json") {
    OrderedJson doc;
    doc["csf"] = csf_name(game.csf());
    doc["values"] = game.values().values();
    doc["profile"] = profile.efforts();
    OrderedJson parr = OrderedJson::array(), uarr = OrderedJson::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
      parr.push_back(round_to_digits(probs[i]));
      uarr.push_back(round_to_digits(utilities[i]));
    }
    doc["probabilities"] = std::move(parr);
    doc["payoffs"] = std::move(uarr);
    doc["aggregate"] = round_to_digits(aggregate);
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    out << "player,value,effort,win_prob,payoff,aggregate\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      out << i << ',' << format_real(round_to_digits(game.values()[i])) << ','
          << format_real(round_to_digits(profile[i])) << ','
          << format_real(round_to_digits(probs[i])) << ','
          << format_real(round_to_digits(utilities[i])) << ','
          << format_real(round_to_digits(aggregate)) << '\n';
    }
  } else {
    out << "csf: " << csf_name(game.csf()) << '\n';
    out << "values: " << join_reals(game.values().values()) << '\n';
    out << "profile: " << join_reals(profile.efforts()) << '\n';
    out << "probabilities: " << join_reals(probs.probs()) << '\n';
    out << "payoffs: " << join_reals(utilities) << '\n';
    out << "aggregate: " << format_real(round_to_digits(aggregate)) << '\n';
  }
  emit(out.str(), config);
  return 0;
}

int run_verify(const ExperimentConfig& config) {
  const ContestGame game = make_game(config);
  const EffortProfile profile = required_profile(config, game);
  const EquilibriumCertificate cert = verify_equilibrium(game, profile, config.search);
  emit(certificate_json(cert).dump(2) + "\n", config);
  return cert.is_epsilon_ne ? 0 : 1;
}

int run_scan(const ExperimentConfig& config) {
  const ContestGame game = make_game(config);
  std::ostringstream out;
  for (const EquilibriumCertificate& cert : grid_scan(game, config.search, config.per_axis)) {
    out << certificate_json(cert).dump() << '\n';
  }
  emit(out.str(), config);
  return 0;
}

int run_report(const ExperimentConfig& config) {
  const ContestGame game = make_game(config);
  const ExtractivenessReport report =
      extractiveness_report(game, config.search, config.scan_per_axis);
  const std::string format = pick_format(config, "json");

  std::ostringstream out;
  if (format == "csv") {
    if (!config.sweep_a) {
      throw ConfigError("report --format csv emits the (a, aggregate_ratio) sweep; "
                        "set --sweep-a first:last");
    }
    out << ratio_sweep_csv((*config.sweep_a)[0], (*config.sweep_a)[1]);
  } else if (format == "json") {
    OrderedJson doc = report_json(report);
    if (config.sweep_a) {
      OrderedJson sweep = OrderedJson::array();
      for (int a = (*config.sweep_a)[0]; a <= (*config.sweep_a)[1]; ++a) {
        sweep.push_back(
            OrderedJson{{"a", a}, {"aggregate_ratio", round_to_digits(aggregate_ratio(a))}});
      }
      doc["ratio_sweep"] = std::move(sweep);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "csf: " << report.csf << '\n';
    out << "values: " << join_reals(report.values) << '\n';
    out << "verdict: " << report.verdict << '\n';
    out << "candidates:\n";
    for (const CandidateResult& c : report.candidates) {
      out << "  " << c.label << ": profile=(" << join_reals(c.certificate.profile.efforts())
          << ") aggregate=" << format_real(round_to_digits(c.certificate.aggregate))
          << " ratio=" << format_real(round_to_digits(c.certificate.extraction_ratio))
          << " max_regret=" << format_real(round_to_digits(c.certificate.max_regret))
          << " epsilon_ne=" << (c.certificate.is_epsilon_ne ? "yes" : "no") << '\n';
    }
    out << "strictness counterwitnesses:\n";
    if (report.strictness_counterwitnesses.empty()) {
      out << "  none found\n";
    }
    for (const CandidateResult& c : report.strictness_counterwitnesses) {
      out << "  " << c.label << ": profile=(" << join_reals(c.certificate.profile.efforts())
          << ") ratio=" << format_real(round_to_digits(c.certificate.extraction_ratio)) << '\n';
    }
    out << "scan: per_axis=" << report.scan_per_axis << " confirmed=" << report.scan_confirmed
        << '\n';
    if (config.sweep_a) {
      out << "ratio sweep:\n";
      for (int a = (*config.sweep_a)[0]; a <= (*config.sweep_a)[1]; ++a) {
        out << "  a=" << a << " ratio=" << format_real(round_to_digits(aggregate_ratio(a)))
            << '\n';
      }
    }
  }
  emit(out.str(), config);
  return 0;
}

int run_dynamics(const ExperimentConfig& config) {
  const ContestGame game = make_game(config);
  EffortProfile init;
  if (config.init) {
    init = EffortProfile(*config.init);
    if (init.size() != game.player_count()) {
      throw ConfigError("init: length " + std::to_string(init.size()) +
                        " does not match contestant count " +
                        std::to_string(game.player_count()));
    }
  } else {
    // Seeded random start inside the deviation box.
    std::mt19937_64 rng(config.seed);
    std::vector<double> efforts(game.player_count());
    for (std::size_t i = 0; i < efforts.size(); ++i) {
      std::uniform_real_distribution<double> unif(0.0, game.values()[i]);
      efforts[i] = unif(rng);
    }
    init = EffortProfile(std::move(efforts));
  }
  const DynamicsResult result =
      best_response_dynamics(game, init, config.rounds, config.search);

  const std::string format = pick_format(config, "csv");
  if (format == "json") {
    emit(dynamics_json(result).dump(2) + "\n", config);
  } else if (format == "csv") {
    emit(dynamics_csv(result), config);
  } else {
    std::ostringstream out;
    out << "steps: " << result.trajectory.size() << '\n';
    out << "rounds used: " << result.rounds_used << '\n';
    out << "converged: " << (result.converged ? "yes" : "no") << '\n';
    out << "final profile: (" << join_reals(result.terminal.profile.efforts()) << ")\n";
    out << "final aggregate: " << format_real(round_to_digits(result.terminal.aggregate))
        << '\n';
    out << "extraction ratio: "
        << format_real(round_to_digits(result.terminal.extraction_ratio)) << '\n';
    emit(out.str(), config);
  }
  return 0;
}

int run_lemma2(const ExperimentConfig& config) {
  const double maximizer =
      symmetric_share_effort(config.lemma_value, config.lemma_a, config.lemma_b);
  const double at_maximizer =
      symmetric_share_payoff(config.lemma_value, config.lemma_a, config.lemma_b, maximizer);
  const bool passed = symmetric_share_effort_check(config.lemma_value, config.lemma_a,
                                                   config.lemma_b, config.lemma_grid);
  OrderedJson doc;
  doc["v"] = round_to_digits(config.lemma_value);
  doc["a"] = config.lemma_a;
  doc["b"] = config.lemma_b;
  doc["grid_points"] = config.lemma_grid;
  doc["maximizer"] = round_to_digits(maximizer);
  doc["payoff_at_maximizer"] = round_to_digits(at_maximizer);
  doc["check_passed"] = passed;
  emit(doc.dump(2) + "\n", config);
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contestlab: contest success function laboratory"};
  app.require_subcommand(1);

  Flags eval_flags, verify_flags, scan_flags, report_flags, dynamics_flags, lemma_flags;

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "probabilities, payoffs and aggregate effort at a profile");
  add_common_flags(eval_cmd, eval_flags);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "verify a profile as an epsilon-Nash equilibrium");
  add_common_flags(verify_cmd, verify_flags);

  CLI::App* scan_cmd =
      app.add_subcommand("scan", "exhaustive grid scan for epsilon-Nash equilibria");
  add_common_flags(scan_cmd, scan_flags);
  scan_flags.per_axis_opt = scan_cmd->add_option(
      "--per-axis", scan_flags.per_axis, "grid points per player axis (default 201)");

  CLI::App* report_cmd =
      app.add_subcommand("report", "extractiveness verdict with verified candidates");
  add_common_flags(report_cmd, report_flags);
  report_flags.scan_axis_opt = report_cmd->add_option(
      "--scan-axis", report_flags.scan_axis,
      "per-axis resolution for the counter-witness scan (0 = skip)");
  report_flags.sweep_a_opt =
      report_cmd->add_option("--sweep-a", report_flags.sweep_a,
                             "emit the (a, aggregate_ratio) sweep for a in first:last")
          ->delimiter(':');

  CLI::App* dynamics_cmd =
      app.add_subcommand("dynamics", "round-robin best-response dynamics");
  add_common_flags(dynamics_cmd, dynamics_flags);
  dynamics_flags.init_opt =
      dynamics_cmd->add_option("--init", dynamics_flags.init,
                               "initial efforts (default: seeded random)")
          ->delimiter(',');
  dynamics_flags.rounds_opt = dynamics_cmd->add_option(
      "--rounds", dynamics_flags.rounds, "maximum best-response rounds (default 100)");

  CLI::App* lemma_cmd = app.add_subcommand(
      "lemma2", "closed-form share maximizer against pinned opponents, with numeric check");
  add_common_flags(lemma_cmd, lemma_flags);
  lemma_flags.lemma_v_opt =
      lemma_cmd->add_option("--v", lemma_flags.lemma_v, "prize value (default 1)");
  lemma_flags.lemma_a_opt =
      lemma_cmd->add_option("--a", lemma_flags.lemma_a, "share exponent parameter (default 2)");
  lemma_flags.lemma_b_opt = lemma_cmd->add_option(
      "--b", lemma_flags.lemma_b, "number of contestants at the pinned effort (default 2)");
  lemma_flags.lemma_grid_opt = lemma_cmd->add_option(
      "--lemma-grid", lemma_flags.lemma_grid, "numeric check grid points (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) return run_eval(resolve_config(eval_flags));
    if (*verify_cmd) return run_verify(resolve_config(verify_flags));
    if (*scan_cmd) return run_scan(resolve_config(scan_flags));
    if (*report_cmd) return run_report(resolve_config(report_flags));
    if (*dynamics_cmd) return run_dynamics(resolve_config(dynamics_flags));
    if (*lemma_cmd) return run_lemma2(resolve_config(lemma_flags));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
