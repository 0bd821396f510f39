#include "contestlab/game.hpp"

namespace contestlab {

ContestGame::ContestGame(ValueProfile values, CsfSpec csf)
    : values_(std::move(values)), csf_(std::move(csf)) {
  validate_csf(csf_, values_);
}

std::vector<double> payoff(const ContestGame& game, const EffortProfile& profile) {
  if (profile.size() != game.player_count()) {
    throw ConfigError("efforts: length " + std::to_string(profile.size()) +
                      " does not match contestant count " +
                      std::to_string(game.player_count()));
  }
  const WinProbabilities probs = evaluate(game.csf(), game.values(), profile);
  std::vector<double> utilities(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    utilities[i] = probs[i] * game.values()[i] - profile[i];
  }
  return utilities;
}

}  // namespace contestlab
