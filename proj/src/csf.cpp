#include "contestlab/csf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace contestlab {

namespace {

bool holds_max(const ValueProfile& values, std::size_t i) {
  return values[i] == max_value(values);
}

std::size_t smallest_max_index(const ValueProfile& values) {
  return argmax_set(values).front();
}

// |x - m| <= eta, the equality test applied to computed efforts.
bool matches(double effort, double target, double eta) {
  return std::abs(effort - target) <= eta;
}

}  // namespace

namespace {

CsfSpec spec_for(CsfSpec::Rule rule) {
  CsfSpec spec;
  spec.rule = std::move(rule);
  return spec;
}

}  // namespace

CsfSpec threshold_triple(std::size_t designated, std::size_t challenger, std::size_t fallback) {
  return spec_for(ThresholdTriple{designated, challenger, fallback});
}

CsfSpec common_value_indicator() { return spec_for(CommonValueIndicator{}); }

CsfSpec max_value_indicator(std::size_t designated) {
  return spec_for(MaxValueIndicator{designated});
}

CsfSpec power_share(int a) { return spec_for(PowerShare{a}); }

CsfSpec lottery_baseline() { return spec_for(LotteryBaseline{}); }

CsfSpec threshold_triple_for(const ValueProfile& values) {
  if (values.size() < 3) {
    throw ConfigError("csf threshold-triple: needs at least 3 contestants, got " +
                      std::to_string(values.size()));
  }
  const std::size_t designated = smallest_max_index(values);
  std::size_t rest[2];
  std::size_t filled = 0;
  for (std::size_t i = 0; i < values.size() && filled < 2; ++i) {
    if (i != designated) rest[filled++] = i;
  }
  return threshold_triple(designated, rest[0], rest[1]);
}

CsfSpec max_value_indicator_for(const ValueProfile& values) {
  if (values.size() != 2) {
    throw ConfigError("csf max-indicator: needs exactly 2 contestants, got " +
                      std::to_string(values.size()));
  }
  return max_value_indicator(smallest_max_index(values));
}

void validate_csf(const CsfSpec& csf, const ValueProfile& values) {
  const std::size_t n = values.size();
  if (!(csf.equality_tolerance >= 0.0)) {
    throw ConfigError("csf equality_tolerance must be >= 0");
  }
  if (csf.frozen_max && !(*csf.frozen_max > 0.0 && std::isfinite(*csf.frozen_max))) {
    throw ConfigError("csf frozen_max must be a finite positive real");
  }
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ThresholdTriple>) {
          if (n < 3) {
            throw ConfigError("csf threshold-triple: needs at least 3 contestants, got " +
                              std::to_string(n));
          }
          if (rule.designated >= n || rule.challenger >= n || rule.fallback >= n) {
            throw ConfigError("csf threshold-triple: contestant index out of range");
          }
          if (rule.designated == rule.challenger || rule.designated == rule.fallback ||
              rule.challenger == rule.fallback) {
            throw ConfigError("csf threshold-triple: designated/challenger/fallback must be distinct");
          }
          if (!holds_max(values, rule.designated)) {
            throw ConfigError("csf threshold-triple: designated contestant " +
                              std::to_string(rule.designated) + " does not hold the maximum value");
          }
        } else if constexpr (std::is_same_v<T, CommonValueIndicator>) {
          if (n != 2) {
            throw ConfigError("csf common-indicator: needs exactly 2 contestants, got " +
                              std::to_string(n));
          }
          if (!is_common_value(values)) {
            throw ConfigError("csf common-indicator: requires a common value");
          }
        } else if constexpr (std::is_same_v<T, MaxValueIndicator>) {
          if (n != 2) {
            throw ConfigError("csf max-indicator: needs exactly 2 contestants, got " +
                              std::to_string(n));
          }
          if (rule.designated >= n) {
            throw ConfigError("csf max-indicator: contestant index out of range");
          }
          if (!holds_max(values, rule.designated)) {
            throw ConfigError("csf max-indicator: designated contestant " +
                              std::to_string(rule.designated) + " does not hold the maximum value");
          }
        } else if constexpr (std::is_same_v<T, PowerShare>) {
          if (rule.a < 2 || static_cast<std::size_t>(rule.a) > n) {
            throw ConfigError("csf power: a must be an integer with 2 <= a <= n, got a=" +
                              std::to_string(rule.a) + ", n=" + std::to_string(n));
          }
        } else {
          static_assert(std::is_same_v<T, LotteryBaseline>);
        }
      },
      csf.rule);
}

std::string csf_name(const CsfSpec& csf) {
  return std::visit(
      [](const auto& rule) -> std::string {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ThresholdTriple>) {
          return "threshold-triple";
        } else if constexpr (std::is_same_v<T, CommonValueIndicator>) {
          return "common-indicator";
        } else if constexpr (std::is_same_v<T, MaxValueIndicator>) {
          return "max-indicator";
        } else if constexpr (std::is_same_v<T, PowerShare>) {
          return "power:a=" + std::to_string(rule.a);
        } else {
          return "lottery";
        }
      },
      csf.rule);
}

CsfSpec parse_csf(const std::string& name, const ValueProfile& values) {
  CsfSpec csf;
  if (name == "threshold-triple") {
    csf = threshold_triple_for(values);
  } else if (name == "common-indicator") {
    csf = common_value_indicator();
  } else if (name == "max-indicator") {
    csf = max_value_indicator_for(values);
  } else if (name == "lottery") {
    csf = lottery_baseline();
  } else if (name.rfind("power:a=", 0) == 0) {
    const std::string arg = name.substr(8);
    int a = 0;
    char trailing = 0;
    if (std::sscanf(arg.c_str(), "%d%c", &a, &trailing) != 1) {
      throw ConfigError("csf: malformed power spec '" + name + "', expected power:a=<int>");
    }
    csf = power_share(a);
  } else {
    throw ConfigError("csf: unknown name '" + name +
                      "' (expected threshold-triple, common-indicator, max-indicator, "
                      "power:a=<int>, or lottery)");
  }
  validate_csf(csf, values);
  return csf;
}

double power_transform(double x, double exponent) {
  if (x == 0.0) return 0.0;
  return std::exp(exponent * std::log(x));
}

void evaluate_into(const CsfSpec& csf, const ValueProfile& values,
                   std::span<const double> efforts, std::span<double> probs) {
  const std::size_t n = efforts.size();
  const double eta = csf.equality_tolerance;
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ThresholdTriple>) {
          const double m = csf.frozen_max ? *csf.frozen_max : max_value(values);
          std::fill(probs.begin(), probs.end(), 0.0);
          std::size_t winner;
          if (matches(efforts[rule.designated], m, eta)) {
            winner = rule.designated;
          } else if (efforts[rule.challenger] > 0.0) {
            winner = rule.challenger;
          } else {
            winner = rule.fallback;
          }
          probs[winner] = 1.0;
        } else if constexpr (std::is_same_v<T, CommonValueIndicator>) {
          // Matching half the common value decides the both-positive branch;
          // the winning profile (m/2, m/2) then splits the prize evenly and
          // any unilateral move off m/2 forfeits it.
          const double half = (csf.frozen_max ? *csf.frozen_max : max_value(values)) / 2.0;
          if (efforts[0] > 0.0 && efforts[1] > 0.0) {
            const double hit0 = matches(efforts[0], half, eta) ? 1.0 : 0.0;
            const double hit1 = matches(efforts[1], half, eta) ? 1.0 : 0.0;
            probs[0] = (hit0 - hit1 + 1.0) / 2.0;
            probs[1] = (hit1 - hit0 + 1.0) / 2.0;
          } else {
            const double pos0 = efforts[0] > 0.0 ? 1.0 : 0.0;
            const double pos1 = efforts[1] > 0.0 ? 1.0 : 0.0;
            probs[0] = (pos0 - pos1 + 1.0) / 2.0;
            probs[1] = (pos1 - pos0 + 1.0) / 2.0;
          }
        } else if constexpr (std::is_same_v<T, MaxValueIndicator>) {
          const double m = csf.frozen_max ? *csf.frozen_max : max_value(values);
          const std::size_t i = rule.designated;
          const std::size_t j = 1 - i;
          probs[i] = matches(efforts[i], m, eta) ? 1.0 : 0.0;
          probs[j] = 1.0 - probs[i];
        } else if constexpr (std::is_same_v<T, PowerShare>) {
          const double q = static_cast<double>(rule.a) / (rule.a - 1.0);
          double sum = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            probs[j] = power_transform(efforts[j], q);
            sum += probs[j];
          }
          if (sum > 0.0) {
            for (std::size_t j = 0; j < n; ++j) probs[j] /= sum;
          } else {
            std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(n));
          }
        } else {
          static_assert(std::is_same_v<T, LotteryBaseline>);
          double sum = 0.0;
          for (double x : efforts) sum += x;
          if (sum > 0.0) {
            for (std::size_t j = 0; j < n; ++j) probs[j] = efforts[j] / sum;
          } else {
            std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(n));
          }
        }
      },
      csf.rule);
}

WinProbabilities evaluate(const CsfSpec& csf, const ValueProfile& values,
                          const EffortProfile& profile) {
  validate_csf(csf, values);
  if (profile.size() != values.size()) {
    throw ConfigError("efforts: length " + std::to_string(profile.size()) +
                      " does not match contestant count " + std::to_string(values.size()));
  }
  std::vector<double> probs(profile.size(), 0.0);
  evaluate_into(csf, values, profile.efforts(), probs);
  return WinProbabilities(std::move(probs));
}

std::vector<double> critical_points(const CsfSpec& csf, const ValueProfile& values,
                                    std::size_t player) {
  validate_csf(csf, values);
  if (player >= values.size()) {
    throw ConfigError("player index " + std::to_string(player) + " out of range");
  }
  const double m = csf.frozen_max ? *csf.frozen_max : max_value(values);
  std::vector<double> points{0.0};
  std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ThresholdTriple> || std::is_same_v<T, MaxValueIndicator>) {
          points.push_back(m);
        } else if constexpr (std::is_same_v<T, CommonValueIndicator>) {
          points.push_back(m / 2.0);
          points.push_back(m);
        } else if constexpr (std::is_same_v<T, PowerShare>) {
          const double a = static_cast<double>(rule.a);
          points.push_back(m / a);
          points.push_back(m * a * (a - 2.0) / ((a - 1.0) * (a - 1.0) * (a - 1.0)));
        }
      },
      csf.rule);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace contestlab
