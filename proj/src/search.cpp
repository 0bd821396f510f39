#include "contestlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace contestlab {

namespace {

constexpr double kInvGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kScanCellBudget = 1e8;

bool smooth_on_positive_orthant(const CsfSpec& csf) {
  return std::holds_alternative<PowerShare>(csf.rule) ||
         std::holds_alternative<LotteryBaseline>(csf.rule);
}

// One player's payoff as a function of own effort, opponents frozen.
class DeviationObjective {
 public:
  DeviationObjective(const ContestGame& game, std::size_t player,
                     const std::vector<double>& efforts)
      : game_(game), player_(player), efforts_(efforts), probs_(efforts.size()) {}

  double operator()(double own) {
    efforts_[player_] = own;
    evaluate_into(game_.csf(), game_.values(), efforts_, probs_);
    return probs_[player_] * game_.values()[player_] - own;
  }

 private:
  const ContestGame& game_;
  std::size_t player_;
  std::vector<double> efforts_;
  std::vector<double> probs_;
};

// Uniform grid on [0, cap] plus bracketed critical points plus the current
// effort (kept even above cap; it never wins there since u < 0 <= u(0)).
std::vector<double> deviation_candidates(const ContestGame& game, std::size_t player,
                                         double current, const SearchConfig& cfg) {
  const double cap = game.values()[player];
  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(cfg.grid_points) + 16);
  for (int k = 0; k < cfg.grid_points; ++k) {
    candidates.push_back(cap * (k / (cfg.grid_points - 1.0)));  // endpoint hits cap exactly
  }
  const double eta = game.csf().equality_tolerance;
  for (double c : critical_points(game.csf(), game.values(), player)) {
    for (double t : {c - 10.0 * eta, c, c + 10.0 * eta}) {
      if (t >= 0.0 && t <= cap) candidates.push_back(t);
    }
  }
  candidates.push_back(current);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return candidates;
}

void check_profile_length(const ContestGame& game, const EffortProfile& profile) {
  if (profile.size() != game.player_count()) {
    throw ConfigError("efforts: length " + std::to_string(profile.size()) +
                      " does not match contestant count " +
                      std::to_string(game.player_count()));
  }
}

}  // namespace

void validate_search_config(const SearchConfig& cfg) {
  if (cfg.grid_points < 2) {
    throw ConfigError("search grid_points must be >= 2, got " + std::to_string(cfg.grid_points));
  }
  if (cfg.refine_iters < 0) {
    throw ConfigError("search refine_iters must be >= 0");
  }
  if (!(cfg.epsilon >= 0.0)) {
    throw ConfigError("search epsilon must be >= 0");
  }
  if (!(cfg.neighborhood_radius >= 0.0)) {
    throw ConfigError("search neighborhood_radius must be >= 0");
  }
}

BestResponse best_response(const ContestGame& game, std::size_t player,
                           const EffortProfile& profile, const SearchConfig& cfg) {
  validate_search_config(cfg);
  check_profile_length(game, profile);
  if (player >= game.player_count()) {
    throw ConfigError("player index " + std::to_string(player) + " out of range");
  }

  DeviationObjective objective(game, player, profile.efforts());
  const std::vector<double> candidates =
      deviation_candidates(game, player, profile[player], cfg);

  std::size_t best_idx = 0;
  double best_x = candidates[0];
  double best_u = objective(best_x);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double u = objective(candidates[k]);
    if (u > best_u) {
      best_u = u;
      best_x = candidates[k];
      best_idx = k;
    }
  }

  if (smooth_on_positive_orthant(game.csf()) && cfg.refine_iters > 0 && candidates.size() > 1) {
    double lo = best_idx > 0 ? candidates[best_idx - 1] : candidates[best_idx];
    double hi = best_idx + 1 < candidates.size() ? candidates[best_idx + 1] : candidates[best_idx];
    auto consider = [&](double x, double u) {
      if (u > best_u || (u == best_u && x < best_x)) {
        best_u = u;
        best_x = x;
      }
    };
    if (hi > lo) {
      double c = hi - kInvGolden * (hi - lo);
      double d = lo + kInvGolden * (hi - lo);
      double uc = objective(c);
      double ud = objective(d);
      consider(c, uc);
      consider(d, ud);
      for (int it = 0; it < cfg.refine_iters; ++it) {
        if (uc >= ud) {
          hi = d;
          d = c;
          ud = uc;
          c = hi - kInvGolden * (hi - lo);
          uc = objective(c);
          consider(c, uc);
        } else {
          lo = c;
          c = d;
          uc = ud;
          d = lo + kInvGolden * (hi - lo);
          ud = objective(d);
          consider(d, ud);
        }
      }
    }
  }

  return BestResponse{best_x, best_u};
}

std::vector<double> regret(const ContestGame& game, const EffortProfile& profile,
                           const SearchConfig& cfg) {
  check_profile_length(game, profile);
  const std::vector<double> current = payoff(game, profile);
  std::vector<double> regrets(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const BestResponse br = best_response(game, i, profile, cfg);
    regrets[i] = std::max(0.0, br.payoff - current[i]);
  }
  return regrets;
}

EquilibriumCertificate verify_equilibrium(const ContestGame& game, const EffortProfile& profile,
                                          const SearchConfig& cfg) {
  EquilibriumCertificate cert{profile, regret(game, profile, cfg)};
  cert.max_regret = *std::max_element(cert.per_player_regret.begin(),
                                      cert.per_player_regret.end());
  cert.aggregate = aggregate_effort(profile);
  cert.extraction_ratio = cert.aggregate / max_value(game.values());
  cert.epsilon = cfg.epsilon;
  cert.is_epsilon_ne = cert.max_regret <= cfg.epsilon;
  return cert;
}

std::vector<EquilibriumCertificate> grid_scan(const ContestGame& game, const SearchConfig& cfg,
                                              int per_axis_points) {
  validate_search_config(cfg);
  if (per_axis_points < 2) {
    throw ConfigError("scan per_axis_points must be >= 2, got " +
                      std::to_string(per_axis_points));
  }
  const std::size_t n = game.player_count();

  std::vector<std::vector<double>> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cap = game.values()[i];
    auto& axis = axes[i];
    axis.reserve(static_cast<std::size_t>(per_axis_points) + 4);
    for (int k = 0; k < per_axis_points; ++k) {
      axis.push_back(cap * (k / (per_axis_points - 1.0)));
    }
    for (double c : critical_points(game.csf(), game.values(), i)) {
      if (c >= 0.0 && c <= cap) axis.push_back(c);
    }
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }

  std::vector<std::size_t> sizes(n), strides(n);
  double cells_estimate = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sizes[i] = axes[i].size();
    strides[i] = i == 0 ? 1 : strides[i - 1] * sizes[i - 1];
    cells_estimate *= static_cast<double>(sizes[i]);
  }
  if (cells_estimate > kScanCellBudget) {
    throw ConfigError("scan budget exceeded: grid has " + std::to_string(cells_estimate) +
                      " cells, limit 1e8");
  }
  const std::size_t cells = static_cast<std::size_t>(cells_estimate + 0.5);

  // Grid-restricted filter: a cell survives when, for every player, its own
  // coordinate is within epsilon of the best payoff along that player's axis
  // (opponents fixed at the cell).
  std::vector<std::uint8_t> passed(cells, 1);
  std::vector<double> efforts(n, 0.0), probs(n, 0.0);
  std::vector<double> row;
  for (std::size_t p = 0; p < n; ++p) {
    row.assign(sizes[p], 0.0);
    const std::size_t slice_count = cells / sizes[p];
    for (std::size_t r = 0; r < slice_count; ++r) {
      std::size_t base = 0;
      std::size_t rest = r;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == p) continue;
        const std::size_t coord = rest % sizes[i];
        rest /= sizes[i];
        base += coord * strides[i];
        efforts[i] = axes[i][coord];
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < sizes[p]; ++t) {
        efforts[p] = axes[p][t];
        evaluate_into(game.csf(), game.values(), efforts, probs);
        row[t] = probs[p] * game.values()[p] - efforts[p];
        best = std::max(best, row[t]);
      }
      for (std::size_t t = 0; t < sizes[p]; ++t) {
        if (row[t] < best - cfg.epsilon) passed[base + t * strides[p]] = 0;
      }
    }
  }

  // Confirm survivors against the full continuous-candidate oracle so grid
  // artifacts never reach the report.
  std::vector<EquilibriumCertificate> confirmed;
  std::vector<double> cell_efforts(n);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (!passed[idx]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      cell_efforts[i] = axes[i][(idx / strides[i]) % sizes[i]];
    }
    EquilibriumCertificate cert =
        verify_equilibrium(game, EffortProfile(cell_efforts), cfg);
    if (cert.is_epsilon_ne) confirmed.push_back(std::move(cert));
  }
  std::stable_sort(confirmed.begin(), confirmed.end(),
                   [](const EquilibriumCertificate& a, const EquilibriumCertificate& b) {
                     return a.max_regret < b.max_regret;
                   });
  return confirmed;
}

DynamicsResult best_response_dynamics(const ContestGame& game, const EffortProfile& init,
                                      int rounds, const SearchConfig& cfg) {
  validate_search_config(cfg);
  check_profile_length(game, init);
  if (rounds < 0) {
    throw ConfigError("dynamics rounds must be >= 0");
  }

  DynamicsResult result;
  result.trajectory.push_back(DynamicsStep{0, -1, init});
  result.terminal = verify_equilibrium(game, init, cfg);
  if (result.terminal.is_epsilon_ne || rounds == 0) {
    result.converged = result.terminal.is_epsilon_ne;
    return result;
  }

  std::vector<double> efforts = init.efforts();
  for (int round = 1; round <= rounds; ++round) {
    for (std::size_t p = 0; p < game.player_count(); ++p) {
      const EffortProfile snapshot(efforts);
      const BestResponse br = best_response(game, p, snapshot, cfg);
      efforts[p] = br.effort;
      result.trajectory.push_back(DynamicsStep{round, static_cast<int>(p), EffortProfile(efforts)});
    }
    result.rounds_used = round;
    result.terminal = verify_equilibrium(game, EffortProfile(efforts), cfg);
    if (result.terminal.is_epsilon_ne) break;
  }
  result.converged = result.terminal.is_epsilon_ne;
  return result;
}

}  // namespace contestlab
