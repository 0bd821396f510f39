#ifndef CONTESTLAB_TYPES_HPP
#define CONTESTLAB_TYPES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace contestlab {

/// Raised when user-supplied data (values, efforts, CSF parameters, search
/// settings) violates an admissibility requirement. The CLI maps this to
/// exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prize value per contestant. Contestants are the indices 0..n-1.
/// Invariants: at least two entries, every entry strictly positive.
class ValueProfile {
 public:
  explicit ValueProfile(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const ValueProfile&) const = default;

 private:
  std::vector<double> values_;
};

/// Effort per contestant. Invariant: every entry nonnegative.
/// Length agreement with a game's ValueProfile is checked at the point of use.
class EffortProfile {
 public:
  EffortProfile() = default;
  explicit EffortProfile(std::vector<double> efforts);

  std::size_t size() const { return efforts_.size(); }
  double operator[](std::size_t i) const { return efforts_[i]; }
  const std::vector<double>& efforts() const { return efforts_; }

  bool operator==(const EffortProfile&) const = default;

 private:
  std::vector<double> efforts_;
};

/// A point of the probability simplex over contestants.
/// Invariants: each entry in [0,1], entries sum to 1 within 1e-12 (absolute).
class WinProbabilities {
 public:
  explicit WinProbabilities(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const WinProbabilities&) const = default;

 private:
  std::vector<double> probs_;
};

/// Largest prize value in the profile.
double max_value(const ValueProfile& values);

/// Indices attaining the maximum value, ascending. Values are user-supplied
/// exact data, so equality is exact.
std::vector<std::size_t> argmax_set(const ValueProfile& values);

/// True iff all contestants share one value (exact comparison).
bool is_common_value(const ValueProfile& values);

/// Sum of all efforts.
double aggregate_effort(const EffortProfile& profile);

}  // namespace contestlab

#endif  // CONTESTLAB_TYPES_HPP
