#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "contestlab/search.hpp"

using namespace contestlab;

namespace {

SearchConfig quick_cfg() {
  SearchConfig cfg;
  cfg.grid_points = 801;
  return cfg;
}

bool same_certificate(const EquilibriumCertificate& a, const EquilibriumCertificate& b) {
  return a.profile == b.profile && a.per_player_regret == b.per_player_regret &&
         a.max_regret == b.max_regret && a.aggregate == b.aggregate &&
         a.extraction_ratio == b.extraction_ratio && a.is_epsilon_ne == b.is_epsilon_ne;
}

}  // namespace

TEST_CASE("search config invariants") {
  SearchConfig cfg;
  cfg.grid_points = 1;
  CHECK_THROWS_AS(validate_search_config(cfg), ConfigError);
  cfg = SearchConfig{};
  cfg.epsilon = -1e-9;
  CHECK_THROWS_AS(validate_search_config(cfg), ConfigError);
  CHECK_NOTHROW(validate_search_config(SearchConfig{}));
}

TEST_CASE("best response matches the closed-form share optimum") {
  // Against an opponent at v*a(b-1)/(b^2(a-1)) = 0.5 (a=b=2, v=1), matching
  // 0.5 is optimal with payoff 0 -- exactly tied with quitting, so the
  // smallest-effort tie-break returns 0 at the same payoff.
  ContestGame game(ValueProfile({1, 1}), power_share(2));
  const BestResponse br = best_response(game, 0, EffortProfile({0.2, 0.5}), SearchConfig{});
  CHECK(br.payoff == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(br.effort == 0.0);

  // Perturbing the opponent below 0.5 breaks the tie: the reply is interior
  // and close to 0.5.
  const BestResponse interior =
      best_response(game, 0, EffortProfile({0.2, 0.49}), SearchConfig{});
  CHECK(interior.payoff > 0.0);
  CHECK(interior.effort == doctest::Approx(0.4999).epsilon(1e-2));
}

TEST_CASE("best response tie-break goes to the smallest effort") {
  // Matching the max value (effort 2) and quitting (effort 0) both pay 0; the
  // oracle must return 0.
  ContestGame game(ValueProfile({2, 1}), max_value_indicator(0));
  const BestResponse br = best_response(game, 0, EffortProfile({1.3, 0}), SearchConfig{});
  CHECK(br.effort == 0.0);
  CHECK(br.payoff == 0.0);
}

TEST_CASE("best response payoff dominates quitting and staying put") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> value_dist(0.2, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SearchConfig cfg = quick_cfg();
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const double common = value_dist(rng);
    ValueProfile values(std::vector<double>(n, common));
    std::vector<CsfSpec> specs{lottery_baseline(), power_share(2)};
    if (n >= 3) specs.push_back(threshold_triple_for(values));
    std::vector<double> efforts(n);
    for (double& e : efforts) e = unit(rng) * common;
    const EffortProfile profile(efforts);
    for (const CsfSpec& csf : specs) {
      ContestGame game(values, csf);
      const auto current = payoff(game, profile);
      for (std::size_t p = 0; p < n; ++p) {
        const BestResponse br = best_response(game, p, profile, cfg);
        CHECK(br.payoff >= 0.0);
        CHECK(br.payoff >= current[p]);
      }
    }
  }
}

TEST_CASE("regret at share equilibria and disequilibria") {
  ContestGame game(ValueProfile({1, 1, 1}), power_share(2));

  const auto at_equilibrium = regret(game, EffortProfile({0.5, 0.5, 0}), SearchConfig{});
  for (double r : at_equilibrium) CHECK(r <= 1e-6);

  // At the zero profile everyone wins 1/3 for free, but grabbing the whole
  // prize with a token effort pays far more.
  const auto at_zero = regret(game, EffortProfile({0, 0, 0}), SearchConfig{});
  CHECK(*std::max_element(at_zero.begin(), at_zero.end()) > 0.1);
}

TEST_CASE("regret vanishes at the zero profile of the max indicator") {
  ContestGame game(ValueProfile({2, 1}), max_value_indicator(0));
  const auto r = regret(game, EffortProfile({0, 0}), SearchConfig{});
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
}

TEST_CASE("verify_equilibrium certificates") {
  SUBCASE("full active set extracts everything") {
    ContestGame game(ValueProfile({1, 1, 1}), power_share(3));
    const auto cert =
        verify_equilibrium(game, EffortProfile({1.0 / 3, 1.0 / 3, 1.0 / 3}), SearchConfig{});
    CHECK(cert.is_epsilon_ne);
    CHECK(cert.extraction_ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("deficient active set leaves rent on the table") {
    ContestGame game(ValueProfile({1, 1, 1}), power_share(3));
    const auto cert =
        verify_equilibrium(game, EffortProfile({3.0 / 8, 3.0 / 8, 0}), SearchConfig{});
    CHECK(cert.is_epsilon_ne);
    CHECK(cert.extraction_ratio == doctest::Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("common indicator splits the pot at half the value each") {
    ContestGame game(ValueProfile({2, 2}), common_value_indicator());
    const auto cert = verify_equilibrium(game, EffortProfile({1, 1}), SearchConfig{});
    CHECK(cert.is_epsilon_ne);
    CHECK(cert.extraction_ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("certificate fields are consistent") {
    ContestGame game(ValueProfile({1, 1}), power_share(2));
    const auto cert = verify_equilibrium(game, EffortProfile({0.4, 0.4}), SearchConfig{});
    CHECK(cert.max_regret ==
          *std::max_element(cert.per_player_regret.begin(), cert.per_player_regret.end()));
    CHECK(cert.aggregate == doctest::Approx(0.8));
    CHECK(cert.extraction_ratio == doctest::Approx(0.8));
    CHECK(cert.is_epsilon_ne == (cert.max_regret <= cert.epsilon));
    CHECK_FALSE(cert.is_epsilon_ne);  // interior disequilibrium has positive regret
  }
}

TEST_CASE("grid_scan pins down the threshold-triple equilibrium") {
  ContestGame game(ValueProfile({3, 1, 1}), threshold_triple(0, 1, 2));
  const auto found = grid_scan(game, quick_cfg(), 11);
  REQUIRE(found.size() >= 1);
  for (const auto& cert : found) {
    CHECK(cert.profile == EffortProfile({3, 0, 0}));
  }
}

TEST_CASE("grid_scan finds only the symmetric pair under quadratic shares") {
  ContestGame game(ValueProfile({1, 1}), power_share(2));
  const auto found = grid_scan(game, quick_cfg(), 11);
  REQUIRE(found.size() == 1);
  CHECK(found[0].profile == EffortProfile({0.5, 0.5}));
  CHECK(found[0].extraction_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grid_scan recovers the lottery's interior equilibrium") {
  // Standard symmetric two-player lottery: the first-order condition
  // s/(x+s)^2 = 1 at s = x gives x = v/4; cross-check via the oracle itself.
  ContestGame game(ValueProfile({1, 1}), lottery_baseline());
  const BestResponse br = best_response(game, 0, EffortProfile({0.1, 0.25}), SearchConfig{});
  CHECK(br.effort == doctest::Approx(0.25).epsilon(1e-6));

  const auto found = grid_scan(game, quick_cfg(), 9);
  REQUIRE(found.size() >= 1);
  for (const auto& cert : found) {
    CHECK(std::abs(cert.profile[0] - 0.25) <= 1e-3);
    CHECK(std::abs(cert.profile[1] - 0.25) <= 1e-3);
    CHECK(cert.extraction_ratio == doctest::Approx(0.5).epsilon(1e-2));
  }
}

TEST_CASE("grid_scan surfaces both equilibrium families of the cubic share rule") {
  // The per-player axes absorb the critical points 1/3 and 3/8, so the scan
  // can land exactly on members of both families: the full three-active
  // profile and the three deficient two-active profiles.
  ContestGame game(ValueProfile({1, 1, 1}), power_share(3));
  const auto found = grid_scan(game, quick_cfg(), 17);

  const EffortProfile full({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const std::vector<EffortProfile> partial{EffortProfile({3.0 / 8, 3.0 / 8, 0}),
                                           EffortProfile({3.0 / 8, 0, 3.0 / 8}),
                                           EffortProfile({0, 3.0 / 8, 3.0 / 8})};
  bool saw_full = false;
  int saw_partial = 0;
  for (const auto& cert : found) {
    if (cert.profile == full) {
      saw_full = true;
      CHECK(cert.extraction_ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (const auto& p : partial) {
      if (cert.profile == p) {
        ++saw_partial;
        CHECK(cert.extraction_ratio == doctest::Approx(0.75).epsilon(1e-12));
      }
    }
  }
  CHECK(saw_full);
  CHECK(saw_partial == 3);
}

TEST_CASE("grid_scan handles four players") {
  ContestGame game(ValueProfile({1, 1, 1, 1}), power_share(2));
  const auto found = grid_scan(game, quick_cfg(), 5);
  REQUIRE(found.size() >= 1);
  // Every confirmed equilibrium is a half-value pair.
  for (const auto& cert : found) {
    int halves = 0, zeros = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (cert.profile[i] == 0.5) ++halves;
      if (cert.profile[i] == 0.0) ++zeros;
    }
    CHECK(halves == 2);
    CHECK(zeros == 2);
  }
}

TEST_CASE("grid_scan rejects oversized grids") {
  ContestGame game(ValueProfile({1, 1}), lottery_baseline());
  CHECK_THROWS_AS(grid_scan(game, SearchConfig{}, 10002), ConfigError);
}

TEST_CASE("confirmed scan certificates satisfy the aggregate and payoff bounds") {
  // Structural soundness: an epsilon-NE certificate can never report more
  // aggregate effort than the maximum value plus n*epsilon, and no player can
  // be left below -epsilon (quitting is always a candidate).
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> value_dist(0.3, 2.5);
  const SearchConfig cfg = quick_cfg();
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> values{value_dist(rng), value_dist(rng)};
    if (trial % 2 == 0) values[1] = values[0];
    ValueProfile vp(values);
    std::vector<CsfSpec> specs{lottery_baseline(), power_share(2)};
    if (is_common_value(vp)) specs.push_back(common_value_indicator());
    for (const CsfSpec& csf : specs) {
      ContestGame game(vp, csf);
      for (const auto& cert : grid_scan(game, cfg, 9)) {
        const double m = max_value(vp);
        CHECK(cert.aggregate <= m + 2 * cfg.epsilon);
        const auto utilities = payoff(game, cert.profile);
        const auto probs = evaluate(csf, vp, cert.profile);
        for (std::size_t i = 0; i < 2; ++i) {
          CHECK(utilities[i] >= -cfg.epsilon);
          CHECK(probs[i] * vp[i] >= cert.profile[i] - cfg.epsilon);
        }
      }
    }
  }
}

TEST_CASE("dynamics converge to full extraction under quadratic shares") {
  ContestGame game(ValueProfile({1, 1, 1}), power_share(2));
  const auto result =
      best_response_dynamics(game, EffortProfile({0.4, 0.4, 0}), 50, SearchConfig{});
  CHECK(result.converged);
  CHECK(result.terminal.extraction_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dynamics stay put at the max indicator zero equilibrium") {
  ContestGame game(ValueProfile({2, 1}), max_value_indicator(0));
  const auto result = best_response_dynamics(game, EffortProfile({0, 0}), 20, SearchConfig{});
  CHECK(result.trajectory.size() == 1);
  CHECK(result.converged);
  CHECK(result.terminal.aggregate == 0.0);
}

TEST_CASE("dynamics with zero rounds emit only the initial profile") {
  ContestGame game(ValueProfile({1, 1}), lottery_baseline());
  const auto result = best_response_dynamics(game, EffortProfile({0.7, 0.1}), 0, SearchConfig{});
  CHECK(result.trajectory.size() == 1);
  CHECK(result.trajectory[0].player == -1);
}

TEST_CASE("each dynamics step improves the updating player") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SearchConfig cfg = quick_cfg();
  for (const CsfSpec& csf : {power_share(2), lottery_baseline()}) {
    ContestGame game(ValueProfile({1, 1, 1}), csf);
    std::vector<double> init{unit(rng), unit(rng), unit(rng)};
    const auto result = best_response_dynamics(game, EffortProfile(init), 5, cfg);
    for (std::size_t k = 1; k < result.trajectory.size(); ++k) {
      const auto& step = result.trajectory[k];
      const auto before = payoff(game, result.trajectory[k - 1].profile);
      const auto after = payoff(game, step.profile);
      CHECK(after[step.player] >= before[step.player] - 1e-12);
    }
  }
}

TEST_CASE("identical inputs produce identical outputs") {
  ContestGame game(ValueProfile({1.3, 0.9, 1.3}), power_share(3));
  const EffortProfile profile({0.31, 0.2, 0.44});
  const SearchConfig cfg = quick_cfg();

  CHECK(same_certificate(verify_equilibrium(game, profile, cfg),
                         verify_equilibrium(game, profile, cfg)));

  const auto scan_a = grid_scan(game, cfg, 7);
  const auto scan_b = grid_scan(game, cfg, 7);
  REQUIRE(scan_a.size() == scan_b.size());
  for (std::size_t i = 0; i < scan_a.size(); ++i) {
    CHECK(same_certificate(scan_a[i], scan_b[i]));
  }

  const auto dyn_a = best_response_dynamics(game, profile, 4, cfg);
  const auto dyn_b = best_response_dynamics(game, profile, 4, cfg);
  REQUIRE(dyn_a.trajectory.size() == dyn_b.trajectory.size());
  for (std::size_t i = 0; i < dyn_a.trajectory.size(); ++i) {
    CHECK(dyn_a.trajectory[i].profile == dyn_b.trajectory[i].profile);
  }
}
