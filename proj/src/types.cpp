#include "contestlab/types.hpp"

#include <algorithm>
#include <cmath>

namespace contestlab {

namespace {

std::string at_index(const char* what, std::size_t i) {
  return std::string(what) + "[" + std::to_string(i) + "]";
}

}  // namespace

ValueProfile::ValueProfile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ConfigError("values: need at least 2 contestants, got " +
                      std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw ConfigError(at_index("values", i) + " must be a finite positive real, got " +
                        std::to_string(values_[i]));
    }
  }
}

EffortProfile::EffortProfile(std::vector<double> efforts) : efforts_(std::move(efforts)) {
  for (std::size_t i = 0; i < efforts_.size(); ++i) {
    if (!(efforts_[i] >= 0.0) || !std::isfinite(efforts_[i])) {
      throw ConfigError(at_index("efforts", i) + " must be a finite nonnegative real, got " +
                        std::to_string(efforts_[i]));
    }
  }
}

WinProbabilities::WinProbabilities(std::vector<double> probs) : probs_(std::move(probs)) {
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0 && probs_[i] <= 1.0)) {
      throw std::logic_error(at_index("probs", i) + " outside [0,1]: " +
                             std::to_string(probs_[i]));
    }
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::logic_error("probs sum to " + std::to_string(sum) + ", expected 1 within 1e-12");
  }
}

double max_value(const ValueProfile& values) {
  return *std::max_element(values.values().begin(), values.values().end());
}

std::vector<std::size_t> argmax_set(const ValueProfile& values) {
  const double m = max_value(values);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == m) out.push_back(i);
  }
  return out;
}

bool is_common_value(const ValueProfile& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[0]) return false;
  }
  return true;
}

double aggregate_effort(const EffortProfile& profile) {
  double sum = 0.0;
  for (double x : profile.efforts()) sum += x;
  return sum;
}

}  // namespace contestlab
