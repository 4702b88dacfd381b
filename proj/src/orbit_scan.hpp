#pragma once

// Shared parallel scan of n^tau * ||n alpha|| over 1 <= n <= n_max.

#include <cstdint>
#include <span>

namespace sadisc::detail {

struct ScanMinimum {
  double value;
  std::int64_t argmin;  // smallest minimizer
};

ScanMinimum min_weighted_orbit_norm(std::span<const double> alpha, std::int64_t n_max, double tau);

}  // namespace sadisc::detail
