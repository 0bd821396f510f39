#include "contestlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace contestlab {

namespace {

constexpr double kClosedFormEpsilon = 1e-9;
constexpr double kExtractionTolerance = 1e-6;  // |ratio - 1| within this witnesses extraction
constexpr double kStrictnessGap = 1e-3;        // ratio below 1 - gap witnesses non-strictness

void require_common_value(const ValueProfile& values, const char* what) {
  if (!is_common_value(values)) {
    throw ConfigError(std::string(what) + ": requires a common value");
  }
}

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

ActiveSet leading_indices(std::size_t count) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  return ActiveSet(std::move(idx));
}

bool value_independent_semantics(const CsfSpec& csf) {
  if (std::holds_alternative<PowerShare>(csf.rule) ||
      std::holds_alternative<LotteryBaseline>(csf.rule)) {
    return true;
  }
  return csf.frozen_max.has_value();
}

bool extracts(const EquilibriumCertificate& cert) {
  return cert.is_epsilon_ne && std::abs(cert.extraction_ratio - 1.0) <= kExtractionTolerance;
}

bool counters_strictness(const EquilibriumCertificate& cert) {
  return cert.is_epsilon_ne && cert.extraction_ratio < 1.0 - kStrictnessGap;
}

}  // namespace

ActiveSet::ActiveSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ConfigError("active set: contestant indices must be distinct");
  }
}

bool ActiveSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

EffortProfile threshold_triple_equilibrium(const ValueProfile& values) {
  if (values.size() < 3) {
    throw ConfigError("threshold-triple equilibrium: needs at least 3 contestants, got " +
                      std::to_string(values.size()));
  }
  std::vector<double> efforts = zeros(values.size());
  efforts[argmax_set(values).front()] = max_value(values);
  return EffortProfile(std::move(efforts));
}

EffortProfile common_indicator_equilibrium(const ValueProfile& values) {
  if (values.size() != 2) {
    throw ConfigError("common-indicator equilibrium: needs exactly 2 contestants, got " +
                      std::to_string(values.size()));
  }
  require_common_value(values, "common-indicator equilibrium");
  const double half = max_value(values) / 2.0;
  return EffortProfile({half, half});
}

std::pair<EffortProfile, EffortProfile> max_indicator_equilibria(const ValueProfile& values) {
  if (values.size() != 2) {
    throw ConfigError("max-indicator equilibria: needs exactly 2 contestants, got " +
                      std::to_string(values.size()));
  }
  if (is_common_value(values)) {
    throw ConfigError("max-indicator equilibria: requires non-common values");
  }
  std::vector<double> extracting = zeros(2);
  extracting[argmax_set(values).front()] = max_value(values);
  return {EffortProfile(std::move(extracting)), EffortProfile(zeros(2))};
}

EffortProfile power_equilibrium(const ValueProfile& values, int a, const ActiveSet& active) {
  require_common_value(values, "power equilibrium");
  const std::size_t n = values.size();
  if (a < 2 || static_cast<std::size_t>(a) > n) {
    throw ConfigError("power equilibrium: a must satisfy 2 <= a <= n, got a=" +
                      std::to_string(a));
  }
  if (active.size() != static_cast<std::size_t>(a)) {
    throw ConfigError("power equilibrium: active set size " + std::to_string(active.size()) +
                      " does not match a=" + std::to_string(a));
  }
  if (active.indices().back() >= n) {
    throw ConfigError("power equilibrium: active index out of range");
  }
  const double effort = max_value(values) / static_cast<double>(a);
  std::vector<double> efforts = zeros(n);
  for (std::size_t i : active.indices()) efforts[i] = effort;
  return EffortProfile(std::move(efforts));
}

EffortProfile power_partial_equilibrium(const ValueProfile& values, int a,
                                        const ActiveSet& active) {
  require_common_value(values, "power partial equilibrium");
  const std::size_t n = values.size();
  if (a < 3 || static_cast<std::size_t>(a) > n) {
    throw ConfigError("power partial equilibrium: a must satisfy 3 <= a <= n, got a=" +
                      std::to_string(a));
  }
  if (active.size() != static_cast<std::size_t>(a) - 1) {
    throw ConfigError("power partial equilibrium: active set size " +
                      std::to_string(active.size()) + " must be a-1=" + std::to_string(a - 1));
  }
  if (active.indices().back() >= n) {
    throw ConfigError("power partial equilibrium: active index out of range");
  }
  const double am1 = static_cast<double>(a) - 1.0;
  const double effort = max_value(values) * a * (a - 2.0) / (am1 * am1 * am1);
  std::vector<double> efforts = zeros(n);
  for (std::size_t i : active.indices()) efforts[i] = effort;
  return EffortProfile(std::move(efforts));
}

double symmetric_share_effort(double value, int a, int b) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("symmetric share effort: value must be a finite positive real");
  }
  if (b < 2 || b > a) {
    throw ConfigError("symmetric share effort: need 2 <= b <= a, got a=" + std::to_string(a) +
                      ", b=" + std::to_string(b));
  }
  return value * a * (b - 1.0) / (static_cast<double>(b) * b * (a - 1.0));
}

double symmetric_share_payoff(double value, int a, int b, double x) {
  const double star = symmetric_share_effort(value, a, b);
  if (!(x >= 0.0)) {
    throw ConfigError("symmetric share payoff: effort must be >= 0");
  }
  const double q = static_cast<double>(a) / (a - 1.0);
  const double own = power_transform(x, q);
  const double rivals = (b - 1.0) * power_transform(star, q);
  return value * own / (own + rivals) - x;
}

bool symmetric_share_effort_check(double value, int a, int b, int grid_points) {
  const double star = symmetric_share_effort(value, a, b);
  if (grid_points < 2) {
    throw ConfigError("symmetric share check: grid_points must be >= 2");
  }
  const double q = static_cast<double>(a) / (a - 1.0);
  const double rivals = (b - 1.0) * power_transform(star, q);
  const double payoff_at_star = value / static_cast<double>(b) - star;

  // Dominance of x* on a dense grid over [0, 2v].
  const double hi = 2.0 * value;
  for (int k = 0; k < grid_points; ++k) {
    const double x = hi * k / (grid_points - 1.0);
    const double own = power_transform(x, q);
    const double u = value * own / (own + rivals) - x;
    if (u > payoff_at_star + 1e-9) return false;
  }

  // Sign pattern of the derivative: nonpositive up to some crossing inside
  // (0, x*), nonnegative from there to x*, strictly negative beyond. Sampled
  // on the uniform grid plus a log grid toward 0 (the leading nonpositive
  // window can be narrower than one uniform step).
  const auto derivative = [&](double x) {
    const double own = power_transform(x, q);
    const double s = own + rivals;
    return value * q * power_transform(x, q - 1.0) * rivals / (s * s) - 1.0;
  };
  // The leading window shrinks roughly like (rivals/(v*q))^(a-1), so the log
  // ladder must deepen with the exponent to land samples inside it.
  const int ladder_depth = std::min(1074, 64 + 16 * a);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(grid_points) + ladder_depth);
  for (int j = ladder_depth; j >= 1; --j) {
    const double x = std::ldexp(star, -j);
    if (x > 0.0) samples.push_back(x);
  }
  for (int k = 1; k < grid_points; ++k) samples.push_back(hi * k / (grid_points - 1.0));
  std::sort(samples.begin(), samples.end());

  constexpr double kSignTol = 1e-10;
  if (!(derivative(samples.front()) <= 0.0)) return false;

  std::size_t first_pos = samples.size();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (derivative(samples[k]) > kSignTol) {
      first_pos = k;
      break;
    }
  }
  if (first_pos == samples.size() || !(samples[first_pos] < star)) return false;

  const double past_star = star * (1.0 + 1e-6);
  for (std::size_t k = first_pos + 1; k < samples.size(); ++k) {
    const double x = samples[k];
    const double d = derivative(x);
    if (x <= star) {
      if (d < -kSignTol) return false;
    } else if (x > past_star) {
      if (!(d < 0.0)) return false;
    }
  }
  return true;
}

double aggregate_ratio(int a) {
  if (a < 3) {
    throw ConfigError("aggregate ratio: a must be >= 3, got " + std::to_string(a));
  }
  const double am1 = static_cast<double>(a) - 1.0;
  return a * (a - 2.0) / (am1 * am1);
}

ExtractivenessReport extractiveness_report(const ContestGame& game, const SearchConfig& cfg,
                                           int scan_per_axis) {
  validate_search_config(cfg);
  ExtractivenessReport report;
  report.csf = csf_name(game.csf());
  report.values = game.values().values();
  report.closed_form_epsilon = kClosedFormEpsilon;
  report.scan_epsilon = cfg.epsilon;

  // Closed-form candidates applicable to this CSF, verified at 1e-9 (they
  // satisfy exact indifference/first-order conditions).
  SearchConfig closed_cfg = cfg;
  closed_cfg.epsilon = kClosedFormEpsilon;
  const ValueProfile& values = game.values();
  const std::size_t n = values.size();

  std::vector<std::pair<std::string, EffortProfile>> constructed;
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ThresholdTriple>) {
          constructed.emplace_back("extracting", threshold_triple_equilibrium(values));
        } else if constexpr (std::is_same_v<T, CommonValueIndicator>) {
          constructed.emplace_back("extracting", common_indicator_equilibrium(values));
        } else if constexpr (std::is_same_v<T, MaxValueIndicator>) {
          std::vector<double> extracting = zeros(n);
          extracting[rule.designated] = max_value(values);
          constructed.emplace_back("extracting", EffortProfile(std::move(extracting)));
          constructed.emplace_back("zero", EffortProfile(zeros(n)));
        } else if constexpr (std::is_same_v<T, PowerShare>) {
          if (is_common_value(values)) {
            constructed.emplace_back(
                "extracting", power_equilibrium(values, rule.a, leading_indices(rule.a)));
            if (rule.a >= 3) {
              constructed.emplace_back("partial", power_partial_equilibrium(
                                                      values, rule.a, leading_indices(rule.a - 1)));
            }
          }
        }
      },
      game.csf().rule);

  for (auto& [label, profile] : constructed) {
    report.candidates.push_back(
        CandidateResult{label, verify_equilibrium(game, profile, closed_cfg)});
  }

  std::vector<CandidateResult> evidence = report.candidates;
  if (scan_per_axis >= 2) {
    report.scan_per_axis = scan_per_axis;
    for (EquilibriumCertificate& cert : grid_scan(game, cfg, scan_per_axis)) {
      ++report.scan_confirmed;
      const bool duplicate =
          std::any_of(evidence.begin(), evidence.end(), [&](const CandidateResult& c) {
            return c.certificate.profile == cert.profile;
          });
      if (!duplicate) evidence.push_back(CandidateResult{"scan", std::move(cert)});
    }
  }

  report.verdict = "not-witnessed";
  for (const CandidateResult& c : evidence) {
    if (extracts(c.certificate)) {
      report.verdict = "extractive-witnessed";
      break;
    }
  }
  for (const CandidateResult& c : evidence) {
    if (counters_strictness(c.certificate)) {
      report.strictness_counterwitnesses.push_back(c);
    }
  }
  return report;
}

namespace {

ProbeSide run_probe_side(const ValueProfile& values, const CsfSpec& csf, const SearchConfig& cfg,
                         int scan_per_axis) {
  ProbeSide side;
  side.values = values.values();
  const ContestGame game(values, csf);
  std::vector<double> forced = zeros(values.size());
  forced[0] = max_value(values);
  side.forced = EffortProfile(std::move(forced));
  side.certificate = verify_equilibrium(game, side.forced, cfg);
  side.designated_win_prob = evaluate(csf, values, side.forced)[0];
  side.forced_is_extracting_ne =
      side.certificate.is_epsilon_ne && std::abs(side.designated_win_prob - 1.0) <= 1e-9;
  if (scan_per_axis >= 2) {
    for (const EquilibriumCertificate& cert : grid_scan(game, cfg, scan_per_axis)) {
      ++side.scan_confirmed;
      if (extracts(cert)) side.scan_found_extraction = true;
    }
  }
  return side;
}

}  // namespace

ImpossibilityProbe extraction_impossibility_probe(
    const std::function<CsfSpec(const ValueProfile&)>& family, const SearchConfig& cfg,
    int scan_per_axis, std::size_t player_count) {
  validate_search_config(cfg);
  if (player_count < 2) {
    throw ConfigError("extraction probe: needs at least 2 contestants");
  }
  const auto probe_values = [&](double top) {
    std::vector<double> v(player_count, 0.5);
    v[0] = top;
    return ValueProfile(std::move(v));
  };
  const ValueProfile low_values = probe_values(1.0);
  const ValueProfile high_values = probe_values(2.0);

  const CsfSpec low_csf = family(low_values);
  const CsfSpec high_csf = family(high_values);
  if (!(low_csf == high_csf)) {
    throw ConfigError(
        "extraction probe: csf family is value-dependent (different specs for the two probe "
        "profiles)");
  }
  if (!value_independent_semantics(low_csf)) {
    throw ConfigError(
        "extraction probe: csf family is value-dependent (indicator rules read the game's "
        "values unless frozen_max is set)");
  }

  ImpossibilityProbe probe;
  probe.csf = csf_name(low_csf);
  probe.low = run_probe_side(low_values, low_csf, cfg, scan_per_axis);
  probe.high = run_probe_side(high_values, high_csf, cfg, scan_per_axis);

  const bool low_found = probe.low.forced_is_extracting_ne || probe.low.scan_found_extraction;
  const bool high_found = probe.high.forced_is_extracting_ne || probe.high.scan_found_extraction;
  if (!low_found) probe.failing.push_back("low");
  if (!high_found) probe.failing.push_back("high");

  if (probe.low.forced_is_extracting_ne && probe.high.forced_is_extracting_ne) {
    // Both forced profiles verified; a fixed CSF cannot do this. Report the
    // deviation the high-value player gains by replaying the low profile's
    // winning effort.
    probe.contradiction = true;
    const WinProbabilities probs = evaluate(low_csf, high_values, probe.low.forced);
    probe.contradiction_gain =
        probs[0] * max_value(high_values) - max_value(low_values);
  }
  return probe;
}

UniquenessScan quadratic_share_uniqueness_scan(std::size_t player_count, double common_value,
                                               const SearchConfig& cfg, int per_axis_points) {
  validate_search_config(cfg);
  if (player_count < 2) {
    throw ConfigError("uniqueness scan: needs at least 2 contestants");
  }
  const ValueProfile values(std::vector<double>(player_count, common_value));
  const ContestGame game(values, power_share(2));

  UniquenessScan out;
  out.player_count = player_count;
  out.common_value = common_value;
  out.confirmed = grid_scan(game, cfg, per_axis_points);

  // Reference profiles: common_value/2 on each 2-subset.
  std::vector<std::vector<double>> references;
  for (std::size_t i = 0; i < player_count; ++i) {
    for (std::size_t j = i + 1; j < player_count; ++j) {
      std::vector<double> ref(player_count, 0.0);
      ref[i] = ref[j] = common_value / 2.0;
      references.push_back(std::move(ref));
    }
  }
  out.max_distance = 0.0;
  out.all_within_delta = true;
  for (const EquilibriumCertificate& cert : out.confirmed) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& ref : references) {
      double dist = 0.0;
      for (std::size_t i = 0; i < player_count; ++i) {
        dist = std::max(dist, std::abs(cert.profile[i] - ref[i]));
      }
      nearest = std::min(nearest, dist);
    }
    out.max_distance = std::max(out.max_distance, nearest);
    if (nearest > cfg.neighborhood_radius) out.all_within_delta = false;
  }

  // Symmetric candidates with 3..n active players satisfy the first-order
  // condition but pay negative utility; quitting to 0 rejects each.
  out.all_rejected = true;
  for (std::size_t alpha = 3; alpha <= player_count; ++alpha) {
    const double a = static_cast<double>(alpha);
    const double effort = 2.0 * common_value * (a - 1.0) / (a * a);
    std::vector<double> efforts(player_count, 0.0);
    for (std::size_t i = 0; i < alpha; ++i) efforts[i] = effort;
    SymmetricRejection rejection;
    rejection.active_count = static_cast<int>(alpha);
    rejection.profile = EffortProfile(std::move(efforts));
    rejection.expected_regret_floor = common_value * (a - 2.0) / (a * a);
    const EquilibriumCertificate cert = verify_equilibrium(game, rejection.profile, cfg);
    rejection.regret = cert.max_regret;
    rejection.rejected = rejection.regret >= rejection.expected_regret_floor - cfg.epsilon;
    if (!rejection.rejected) out.all_rejected = false;
    out.rejections.push_back(std::move(rejection));
  }
  return out;
}

}  // namespace contestlab
