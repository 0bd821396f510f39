#ifndef CONTESTLAB_GAME_HPP
#define CONTESTLAB_GAME_HPP

#include <vector>

#include "contestlab/csf.hpp"
#include "contestlab/types.hpp"

namespace contestlab {

/// An effort game: prize values plus an admissible CSF. Admissibility of the
/// pairing is checked once at construction; the game is immutable afterwards.
class ContestGame {
 public:
  ContestGame(ValueProfile values, CsfSpec csf);

  const ValueProfile& values() const { return values_; }
  const CsfSpec& csf() const { return csf_; }
  std::size_t player_count() const { return values_.size(); }

 private:
  ValueProfile values_;
  CsfSpec csf_;
};

/// Per-contestant utility u_i = p_i * v_i - x_i where p is the CSF output at
/// the profile.
std::vector<double> payoff(const ContestGame& game, const EffortProfile& profile);

}  // namespace contestlab

#endif  // CONTESTLAB_GAME_HPP
