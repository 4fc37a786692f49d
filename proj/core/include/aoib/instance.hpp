#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoib {

/// Base class for problem-instance validation failures.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two channels share the same success probability.
struct NonStrictOrder : ValidationError {
  using ValidationError::ValidationError;
};

/// A success probability lies outside the open interval (0, 1).
struct OutOfRange : ValidationError {
  using ValidationError::ValidationError;
};

/// Fewer channels than sources (N < M).
struct TooFewChannels : ValidationError {
  using ValidationError::ValidationError;
};

/// No sources (M < 1).
struct Empty : ValidationError {
  using ValidationError::ValidationError;
};

/// A system of M sources sharing N unreliable channels.
///
/// `mu` holds the per-channel success probabilities in strictly descending
/// order, so channel index 0 is the best channel and the "best-M" set is
/// simply the first M entries. `delta` is the smallest gap between two of
/// the top-M probabilities (+infinity when M == 1, where no pair exists)
/// and `mu_min` the overall smallest probability.
struct ProblemInstance {
  int M = 0;
  int N = 0;
  std::vector<double> mu;
  double delta = std::numeric_limits<double>::infinity();
  double mu_min = 0.0;

  /// Mean success probability over the best-M channels.
  double top_m_mean() const;
};

/// Builds a ProblemInstance from raw inputs.
///
/// `mu` may arrive unsorted; it is sorted descending and all channel indices
/// used elsewhere refer to the sorted order. Throws a ValidationError
/// subclass when the inputs do not describe a valid system: Empty (M < 1),
/// TooFewChannels (N < M), OutOfRange (some probability not in (0,1)),
/// NonStrictOrder (two equal probabilities).
ProblemInstance validate_instance(int M, int N, std::vector<double> mu);

/// Equidistant probability vector: mu1, mu1 - delta, ..., mu1 - (N-1)*delta.
std::vector<double> equidistant_mu(double mu1, double delta, int N);

}  // namespace aoib
