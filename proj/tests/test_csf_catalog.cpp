#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "contestlab/csf.hpp"

using namespace contestlab;

namespace {

std::vector<double> probs_of(const CsfSpec& csf, const ValueProfile& v,
                             const std::vector<double>& x) {
  return evaluate(csf, v, EffortProfile(x)).probs();
}

}  // namespace

TEST_CASE("threshold triple rules") {
  const ValueProfile v({3, 1, 1});
  const CsfSpec csf = threshold_triple(0, 1, 2);
  CHECK(probs_of(csf, v, {3, 0, 0}) == std::vector<double>{1, 0, 0});  // designated matches max
  CHECK(probs_of(csf, v, {1, 2, 0}) == std::vector<double>{0, 1, 0});  // challenger active
  CHECK(probs_of(csf, v, {0, 0, 5}) == std::vector<double>{0, 0, 1});  // fallback wins
}

TEST_CASE("common value indicator rules") {
  const ValueProfile v({2, 2});
  const CsfSpec csf = common_value_indicator();
  CHECK(probs_of(csf, v, {1, 1}) == std::vector<double>{0.5, 0.5});
  CHECK(probs_of(csf, v, {0, 3}) == std::vector<double>{0, 1});
  CHECK(probs_of(csf, v, {0, 0}) == std::vector<double>{0.5, 0.5});
  CHECK(probs_of(csf, v, {1, 0.4}) == std::vector<double>{1, 0});  // only one matches m/2
}

TEST_CASE("power share rules") {
  CHECK(probs_of(power_share(2), ValueProfile({1, 1, 1}), {0, 0, 0}) ==
        std::vector<double>(3, 1.0 / 3));
  // a=2 squares the efforts: shares 1/(1+9) and 9/(1+9).
  const auto p = probs_of(power_share(2), ValueProfile({1, 1}), {1, 3});
  CHECK(p[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("lottery baseline rules") {
  const auto p = probs_of(lottery_baseline(), ValueProfile({1, 1}), {1, 3});
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.75));
}

TEST_CASE("admissibility errors") {
  CHECK_THROWS_AS(evaluate(threshold_triple(0, 1, 2), ValueProfile({2, 1}),
                           EffortProfile({0, 0})),
                  ConfigError);  // needs n >= 3
  CHECK_THROWS_AS(evaluate(threshold_triple(1, 1, 2), ValueProfile({3, 1, 1}),
                           EffortProfile({0, 0, 0})),
                  ConfigError);  // indices not distinct
  CHECK_THROWS_AS(evaluate(threshold_triple(1, 0, 2), ValueProfile({3, 1, 1}),
                           EffortProfile({0, 0, 0})),
                  ConfigError);  // designated lacks the max value
  CHECK_THROWS_AS(evaluate(power_share(5), ValueProfile({1, 1}), EffortProfile({0, 0})),
                  ConfigError);  // a > n
  CHECK_THROWS_AS(evaluate(power_share(1), ValueProfile({1, 1}), EffortProfile({0, 0})),
                  ConfigError);  // a < 2
  CHECK_THROWS_AS(evaluate(common_value_indicator(), ValueProfile({2, 1}),
                           EffortProfile({0, 0})),
                  ConfigError);  // non-common values
  CHECK_THROWS_AS(evaluate(max_value_indicator(1), ValueProfile({2, 1}),
                           EffortProfile({0, 0})),
                  ConfigError);  // designated lacks the max value
  CsfSpec bad = power_share(2);
  bad.equality_tolerance = -1.0;
  CHECK_THROWS_AS(evaluate(bad, ValueProfile({1, 1}), EffortProfile({0, 0})), ConfigError);
}

TEST_CASE("critical points") {
  CHECK(critical_points(max_value_indicator(0), ValueProfile({2, 1}), 0) ==
        std::vector<double>{0, 2});
  CHECK(critical_points(power_share(3), ValueProfile({1, 1, 1}), 1) ==
        std::vector<double>{0, 1.0 / 3, 3.0 / 8});
  CHECK(critical_points(lottery_baseline(), ValueProfile({4, 1}), 1) ==
        std::vector<double>{0});
  // a=2 collapses the deficient-set point onto 0.
  CHECK(critical_points(power_share(2), ValueProfile({1, 1}), 0) ==
        std::vector<double>{0, 0.5});
}

TEST_CASE("canonical names round-trip") {
  const ValueProfile v3({3, 1, 1});
  const ValueProfile v2({2, 1});
  const ValueProfile v2c({2, 2});
  CHECK(csf_name(parse_csf("threshold-triple", v3)) == "threshold-triple");
  CHECK(csf_name(parse_csf("common-indicator", v2c)) == "common-indicator");
  CHECK(csf_name(parse_csf("max-indicator", v2)) == "max-indicator");
  CHECK(csf_name(parse_csf("power:a=2", v2)) == "power:a=2");
  CHECK(csf_name(parse_csf("lottery", v2)) == "lottery");
  CHECK_THROWS_AS(parse_csf("power:a=x", v2), ConfigError);
  CHECK_THROWS_AS(parse_csf("power:a=5", v2), ConfigError);
  CHECK_THROWS_AS(parse_csf("nonsense", v2), ConfigError);
  // Default cast: designated = smallest max index, then smallest remaining.
  const CsfSpec auto_triple = parse_csf("threshold-triple", ValueProfile({1, 2, 2}));
  const auto& rule = std::get<ThresholdTriple>(auto_triple.rule);
  CHECK(rule.designated == 1);
  CHECK(rule.challenger == 0);
  CHECK(rule.fallback == 2);
}

TEST_CASE("every catalog csf emits a simplex point") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> value_dist(0.1, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const double common = value_dist(rng);
    std::vector<double> values(n, common);
    if (trial % 3 == 0) {
      for (double& v : values) v = value_dist(rng);
    }
    ValueProfile vp(values);

    std::vector<CsfSpec> specs{lottery_baseline()};
    for (int a = 2; a <= static_cast<int>(n); ++a) specs.push_back(power_share(a));
    if (n >= 3) specs.push_back(threshold_triple_for(vp));
    if (n == 2) specs.push_back(max_value_indicator_for(vp));
    if (n == 2 && is_common_value(vp)) specs.push_back(common_value_indicator());

    std::vector<double> efforts(n);
    for (double& e : efforts) {
      e = trial % 5 == 0 ? 0.0 : unit(rng) * 1.5 * common;
    }

    for (const CsfSpec& csf : specs) {
      // The WinProbabilities constructor enforces simplex membership at 1e-12.
      const WinProbabilities p = evaluate(csf, vp, EffortProfile(efforts));
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(p[i] >= 0.0);
        CHECK(p[i] <= 1.0);
        sum += p[i];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("power share is anonymous") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  const ValueProfile v({1, 1, 1, 1});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(4);
    for (double& e : x) e = unit(rng);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);

    for (int a : {2, 3, 4}) {
      const auto p = probs_of(power_share(a), v, x);
      std::vector<double> permuted(4);
      for (std::size_t i = 0; i < 4; ++i) permuted[i] = x[perm[i]];
      const auto q = probs_of(power_share(a), v, permuted);
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(q[i] == doctest::Approx(p[perm[i]]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("power share is homogeneous of degree zero") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.01, 2.0);
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  const ValueProfile v({2, 2, 2});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x{unit(rng), unit(rng), trial % 4 == 0 ? 0.0 : unit(rng)};
    const double lambda = scale_dist(rng);
    for (int a : {2, 3}) {
      const auto p = probs_of(power_share(a), v, x);
      std::vector<double> scaled(x);
      for (double& e : scaled) e *= lambda;
      const auto q = probs_of(power_share(a), v, scaled);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(p[i] - q[i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("max indicator probability is a 0/1 indicator of matching the max") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 3.0);
  const ValueProfile v({2, 1});
  const CsfSpec csf = max_value_indicator(0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x{unit(rng), unit(rng)};
    if (trial % 7 == 0) x[0] = 2.0;
    if (trial % 11 == 0) x[0] = 2.0 + 5e-13;  // inside the equality tolerance
    const auto p = probs_of(csf, v, x);
    const bool hits = std::abs(x[0] - 2.0) <= csf.equality_tolerance;
    CHECK(p[0] == (hits ? 1.0 : 0.0));
    CHECK(p[1] == 1.0 - p[0]);
  }
}

TEST_CASE("threshold triple always crowns a unique winner") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 4.0);
  const ValueProfile v({3, 1, 1, 2});
  const CsfSpec csf = threshold_triple_for(v);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(4);
    for (double& e : x) e = trial % 5 == 0 ? 0.0 : unit(rng);
    if (trial % 3 == 0) x[0] = 3.0;
    const auto p = probs_of(csf, v, x);
    int winners = 0;
    for (double pi : p) {
      CHECK((pi == 0.0 || pi == 1.0));
      winners += pi == 1.0 ? 1 : 0;
    }
    CHECK(winners == 1);
  }
}

TEST_CASE("frozen threshold pins the indicator rules") {
  CsfSpec frozen = max_value_indicator(0);
  frozen.frozen_max = 1.0;
  const ValueProfile high({2, 0.5});
  CHECK(probs_of(frozen, high, {1, 0}) == std::vector<double>{1, 0});  // stale threshold fires at 1
  CHECK(probs_of(frozen, high, {2, 0}) == std::vector<double>{0, 1});  // the true max misses it
  CHECK(critical_points(frozen, high, 0) == std::vector<double>{0, 1});

  CsfSpec bad = frozen;
  bad.frozen_max = -2.0;
  CHECK_THROWS_AS(evaluate(bad, high, EffortProfile({0, 0})), ConfigError);
}
