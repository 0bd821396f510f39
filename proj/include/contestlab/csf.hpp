#ifndef CONTESTLAB_CSF_HPP
#define CONTESTLAB_CSF_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "contestlab/types.hpp"

namespace contestlab {

// ----------------------------------------------------------------------------
// CSF catalog. A contest success function maps an effort tuple to a point of
// the probability simplex; the catalog holds every rule the library supports.
// ----------------------------------------------------------------------------

/// Winner-take-all rule on three designated contestants (needs n >= 3 and
/// `designated` holding a maximum value): the designated contestant wins by
/// matching the maximum value with their effort; failing that, the challenger
/// wins by exerting anything positive; failing both, the fallback wins.
struct ThresholdTriple {
  std::size_t designated = 0;
  std::size_t challenger = 1;
  std::size_t fallback = 2;

  bool operator==(const ThresholdTriple&) const = default;
};

/// Two-player, common-value rule. With both efforts positive, matching the
/// common value with your effort decides the winner (split on ties); with at
/// least one effort at zero, positive effort decides instead.
struct CommonValueIndicator {
  bool operator==(const CommonValueIndicator&) const = default;
};

/// Two-player rule: the designated contestant (who must hold a maximum value)
/// wins exactly when their effort equals the maximum value; otherwise the
/// opponent wins.
struct MaxValueIndicator {
  std::size_t designated = 0;

  bool operator==(const MaxValueIndicator&) const = default;
};

/// Share rule: winning probabilities proportional to efforts raised to
/// a/(a-1), uniform at the all-zero profile. Admissible for integer a with
/// 2 <= a <= n. The parameter also sets the size of the full extracting
/// equilibrium's active set.
struct PowerShare {
  int a = 2;

  bool operator==(const PowerShare&) const = default;
};

/// Plain proportional lottery p_i = x_i / sum(x), uniform at zero.
/// Comparison baseline; not extractive.
struct LotteryBaseline {
  bool operator==(const LotteryBaseline&) const = default;
};

/// A declarative CSF description: one rule plus the equality tolerance used
/// for "effort equals the maximum value" tests on computed efforts.
/// Strict-positivity tests are always exact.
///
/// The indicator rules normally read the maximum value off the game they are
/// paired with; setting `frozen_max` pins that threshold instead, which makes
/// the rule a genuinely value-independent function (the extraction
/// impossibility probe requires this).
struct CsfSpec {
  using Rule = std::variant<ThresholdTriple, CommonValueIndicator, MaxValueIndicator,
                            PowerShare, LotteryBaseline>;

  Rule rule;
  double equality_tolerance = 1e-12;
  std::optional<double> frozen_max;

  bool operator==(const CsfSpec&) const = default;
};

CsfSpec threshold_triple(std::size_t designated, std::size_t challenger, std::size_t fallback);
CsfSpec common_value_indicator();
CsfSpec max_value_indicator(std::size_t designated);
CsfSpec power_share(int a);
CsfSpec lottery_baseline();

/// ThresholdTriple with the deterministic default cast: designated = smallest
/// index holding the maximum value, challenger and fallback = the two smallest
/// remaining indices.
CsfSpec threshold_triple_for(const ValueProfile& values);

/// MaxValueIndicator with designated = smallest index holding the maximum value.
CsfSpec max_value_indicator_for(const ValueProfile& values);

/// Checks the rule/profile pairing: index bounds, distinctness, player-count
/// and common-value requirements, exponent range, tolerance sign.
/// Throws ConfigError with a field-addressed message when inadmissible.
void validate_csf(const CsfSpec& csf, const ValueProfile& values);

/// Canonical textual name: "threshold-triple", "common-indicator",
/// "max-indicator", "power:a=<int>", "lottery".
std::string csf_name(const CsfSpec& csf);

/// Inverse of csf_name. Designated indices for the indicator rules are
/// resolved from `values` via the default cast above.
CsfSpec parse_csf(const std::string& name, const ValueProfile& values);

/// Win probabilities at an effort profile. Validates admissibility.
WinProbabilities evaluate(const CsfSpec& csf, const ValueProfile& values,
                          const EffortProfile& profile);

/// Same computation without validation or allocation; `efforts` and `probs`
/// must have the profile length. The engine uses this on pre-validated games.
void evaluate_into(const CsfSpec& csf, const ValueProfile& values,
                   std::span<const double> efforts, std::span<double> probs);

/// Efforts where the player's winning probability can jump, plus the efforts
/// closed-form equilibria sit at. Always contains 0; sorted ascending, unique.
/// Deviation searches bracket each point with +-10*equality_tolerance.
std::vector<double> critical_points(const CsfSpec& csf, const ValueProfile& values,
                                    std::size_t player);

/// x^(a/(a-1)) evaluated via exp-log for x > 0, 0 at x = 0.
double power_transform(double x, double exponent);

}  // namespace contestlab

#endif  // CONTESTLAB_CSF_HPP
