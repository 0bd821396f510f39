#ifndef CONTESTLAB_THEORY_HPP
#define CONTESTLAB_THEORY_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "contestlab/search.hpp"

namespace contestlab {

// ----------------------------------------------------------------------------
// Closed-form equilibrium constructors for the catalog CSFs, plus executable
// checks of the extraction results they support. Every constructor's output
// verifies against the brute-force oracle at epsilon = 1e-9.
// ----------------------------------------------------------------------------

/// Set of contestants exerting positive effort at a profile.
class ActiveSet {
 public:
  explicit ActiveSet(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(std::size_t i) const;

 private:
  std::vector<std::size_t> indices_;  // sorted, unique
};

/// Unique equilibrium of the threshold-triple CSF (n >= 3): the designated
/// contestant exerts the maximum value, everyone else 0. Aggregate = m^v.
EffortProfile threshold_triple_equilibrium(const ValueProfile& values);

/// Unique equilibrium of the common-indicator CSF (n = 2, common value):
/// both exert half the common value. Aggregate = m^v.
EffortProfile common_indicator_equilibrium(const ValueProfile& values);

/// The two equilibria of the max-indicator CSF (n = 2, non-common values):
/// first the extracting one (maximum value exerted by the top-value player),
/// then the all-zero one that certifies non-strictness.
std::pair<EffortProfile, EffortProfile> max_indicator_equilibria(const ValueProfile& values);

/// Power-share equilibrium with a full active set: m^v/a on each of the |A|=a
/// active contestants, 0 elsewhere. Requires a common value. Aggregate = m^v.
EffortProfile power_equilibrium(const ValueProfile& values, int a, const ActiveSet& active);

/// Power-share equilibrium with a deficient active set (|A| = a-1, a >= 3):
/// m^v*a(a-2)/(a-1)^3 on each active contestant. Aggregate falls short of m^v
/// by the factor a(a-2)/(a-1)^2, witnessing non-strictness.
EffortProfile power_partial_equilibrium(const ValueProfile& values, int a,
                                        const ActiveSet& active);

/// Closed-form effort x* = v*a*(b-1)/(b^2*(a-1)) that maximizes the
/// power-share payoff against b-1 opponents pinned at x* (2 <= b <= a).
double symmetric_share_effort(double value, int a, int b);

/// The objective maximized above: share of `value` under exponent a/(a-1)
/// against b-1 opponents at x*, minus own effort.
double symmetric_share_payoff(double value, int a, int b, double x);

/// Numeric confirmation that x* is the global maximizer: dense-grid dominance
/// over [0, 2v] at 1e-9, plus the derivative sign pattern (nonpositive, then
/// nonnegative up to x*, then strictly negative) sampled analytically.
bool symmetric_share_effort_check(double value, int a, int b, int grid_points);

/// Aggregate effort of the deficient-active-set equilibrium relative to the
/// common value: a(a-2)/(a-1)^2 for a >= 3. Strictly increasing, limit 1.
double aggregate_ratio(int a);

struct CandidateResult {
  std::string label;  // "extracting", "zero", "partial", "scan"
  EquilibriumCertificate certificate;
};

/// Verdict on whether the game's CSF extracts the maximum value, with the
/// verified candidate equilibria as evidence. An epsilon-NE whose extraction
/// ratio falls below 1 - 1e-3 is listed as a witness against strictness.
struct ExtractivenessReport {
  std::string csf;
  std::vector<double> values;
  std::string verdict;  // "extractive-witnessed" or "not-witnessed"
  std::vector<CandidateResult> candidates;
  std::vector<CandidateResult> strictness_counterwitnesses;
  double closed_form_epsilon = 1e-9;
  double scan_epsilon = 0.0;
  int scan_per_axis = 0;           // 0 = no scan ran
  std::size_t scan_confirmed = 0;  // epsilon-NE count from the scan
};

/// Assembles the closed-form candidates applicable to the game's CSF, verifies
/// each at epsilon = 1e-9, and (when scan_per_axis >= 2) adds a grid scan at
/// cfg.epsilon to hunt for counter-witnesses against strictness.
ExtractivenessReport extractiveness_report(const ContestGame& game, const SearchConfig& cfg,
                                           int scan_per_axis = 0);

/// One value profile's evidence inside the two-profile extraction probe.
struct ProbeSide {
  std::vector<double> values;
  EffortProfile forced;                   // the only profile that can extract
  EquilibriumCertificate certificate;
  double designated_win_prob = 0.0;       // CSF probability of player 0 at `forced`
  bool forced_is_extracting_ne = false;   // certificate passed with win prob 1
  std::size_t scan_confirmed = 0;
  bool scan_found_extraction = false;     // some scanned epsilon-NE has ratio ~ 1
};

/// Outcome of probing a value-independent CSF against the two scaled value
/// profiles (top value 1, then 2) that cannot both be extracted: at least one
/// side must lack an extracting equilibrium; if both verified anyway, the
/// profitable cross-profile deviation is reported as a contradiction.
struct ImpossibilityProbe {
  std::string csf;
  ProbeSide low;
  ProbeSide high;
  std::vector<std::string> failing;  // "low" / "high": sides with no extracting NE found
  bool contradiction = false;
  double contradiction_gain = 0.0;   // payoff gain of the cross-profile deviation
};

/// Runs the probe on family(values). The family must be value-independent:
/// it must return the same CsfSpec for both probe profiles, and that spec's
/// rule must not read the game's values (share rules qualify; indicator rules
/// qualify only with frozen_max set). Throws ConfigError otherwise.
/// scan_per_axis >= 2 adds a per-side grid scan for extracting equilibria.
ImpossibilityProbe extraction_impossibility_probe(
    const std::function<CsfSpec(const ValueProfile&)>& family, const SearchConfig& cfg,
    int scan_per_axis = 0, std::size_t player_count = 2);

/// A symmetric all-active candidate rejected by the uniqueness scan.
struct SymmetricRejection {
  int active_count = 0;              // 3 <= alpha <= n
  EffortProfile profile;             // 2v(alpha-1)/alpha^2 on the first alpha players
  double expected_regret_floor = 0;  // v(alpha-2)/alpha^2: gain from quitting to 0
  double regret = 0.0;               // max regret found by the oracle
  bool rejected = false;             // regret >= floor - epsilon
};

/// Scan evidence that the quadratic share CSF (power a=2) has only the
/// two-active half-value equilibria under a common value.
struct UniquenessScan {
  std::size_t player_count = 0;
  double common_value = 0.0;
  std::vector<EquilibriumCertificate> confirmed;
  double max_distance = 0.0;     // sup-norm distance to the nearest reference profile
  bool all_within_delta = false; // every confirmed NE within cfg.neighborhood_radius
  std::vector<SymmetricRejection> rejections;
  bool all_rejected = false;
};

/// Grid-scans the n-player common-value game under power a=2, matches every
/// confirmed epsilon-NE against the {v/2 on a 2-subset} reference profiles,
/// and confirms the symmetric candidates with 3..n active players are not
/// equilibria.
UniquenessScan quadratic_share_uniqueness_scan(std::size_t player_count, double common_value,
                                               const SearchConfig& cfg, int per_axis_points);

}  // namespace contestlab

#endif  // CONTESTLAB_THEORY_HPP
