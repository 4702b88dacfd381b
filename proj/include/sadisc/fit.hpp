#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sadisc {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y ~ slope*x + intercept. r_squared is 1 for a perfect
/// fit (including constant data) and clamped to [0,1].
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct ExponentFit {
  std::vector<std::pair<std::int64_t, std::int64_t>> points;  // (N, count)
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// OLS of log max(count,1) against log N. Needs at least 3 distinct N.
ExponentFit fit_exponent(std::span<const std::pair<std::int64_t, std::int64_t>> points);

}  // namespace sadisc
