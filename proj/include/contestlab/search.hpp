#ifndef CONTESTLAB_SEARCH_HPP
#define CONTESTLAB_SEARCH_HPP

#include <cstddef>
#include <vector>

#include "contestlab/game.hpp"

namespace contestlab {

/// Deviation-search parameters for the brute-force oracle.
struct SearchConfig {
  /// Uniform grid resolution on each player's deviation interval [0, v_i].
  int grid_points = 2001;
  /// Golden-section steps around the best grid bracket; applied only when the
  /// CSF is smooth on the positive orthant (power share or lottery).
  int refine_iters = 60;
  /// Regret tolerance: a profile is an epsilon-NE when max regret <= epsilon.
  double epsilon = 1e-6;
  /// Sup-norm radius used by uniqueness scans when matching found equilibria
  /// against reference profiles.
  double neighborhood_radius = 1e-3;
};

/// Throws ConfigError when grid_points < 2, refine_iters < 0, epsilon < 0 or
/// neighborhood_radius < 0.
void validate_search_config(const SearchConfig& cfg);

/// Outcome of a single-player deviation search.
struct BestResponse {
  double effort = 0.0;
  double payoff = 0.0;
};

/// Evidence that a profile is (or is not) an epsilon-Nash equilibrium, plus
/// extraction metrics. `epsilon` records the tolerance it was verified at.
struct EquilibriumCertificate {
  EffortProfile profile;
  std::vector<double> per_player_regret;
  double max_regret = 0.0;
  double aggregate = 0.0;
  double extraction_ratio = 0.0;  // aggregate / max value
  double epsilon = 0.0;
  bool is_epsilon_ne = false;
};

/// Approximately maximizes the player's payoff over own effort in [0, v_i],
/// opponents fixed at `profile`. Candidates: a uniform grid on [0, v_i], the
/// CSF's critical points bracketed by +-10*equality_tolerance, and the current
/// effort; ties break toward the smallest effort. Efforts above v_i are
/// strictly dominated by 0, so the truncation loses nothing.
BestResponse best_response(const ContestGame& game, std::size_t player,
                           const EffortProfile& profile, const SearchConfig& cfg);

/// Per-player deviation gain: best-response payoff minus current payoff,
/// floored at zero.
std::vector<double> regret(const ContestGame& game, const EffortProfile& profile,
                           const SearchConfig& cfg);

/// Full certificate for a profile: regrets, aggregate effort, extraction
/// ratio, and the epsilon-NE verdict at cfg.epsilon.
EquilibriumCertificate verify_equilibrium(const ContestGame& game,
                                          const EffortProfile& profile,
                                          const SearchConfig& cfg);

/// Exhaustive scan of the product grid (per-player uniform grids on [0, v_i]
/// joined with critical points). Grid profiles surviving a grid-restricted
/// deviation check are confirmed with full verify_equilibrium; only confirmed
/// epsilon-NE are returned, sorted by max regret (stable in enumeration
/// order). Throws ConfigError when the grid exceeds 1e8 cells.
std::vector<EquilibriumCertificate> grid_scan(const ContestGame& game,
                                              const SearchConfig& cfg,
                                              int per_axis_points);

/// One profile snapshot along a best-response path. `player` is the contestant
/// whose effort was just replaced; -1 marks the initial profile.
struct DynamicsStep {
  int round = 0;
  int player = -1;
  EffortProfile profile;
};

struct DynamicsResult {
  std::vector<DynamicsStep> trajectory;
  EquilibriumCertificate terminal;
  bool converged = false;
  int rounds_used = 0;
};

/// Round-robin best-response updates from `init`, at most `rounds` full
/// rounds, stopping early once the current profile verifies as an epsilon-NE
/// (the initial profile included). Non-convergence is reported through
/// `converged`, never as an error.
DynamicsResult best_response_dynamics(const ContestGame& game, const EffortProfile& init,
                                      int rounds, const SearchConfig& cfg);

}  // namespace contestlab

#endif  // CONTESTLAB_SEARCH_HPP
