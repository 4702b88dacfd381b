#pragma once

// Finite scans of the weak (WDC) and standard (DC) Diophantine conditions, plus
// regular continued fractions for b = 1. A scan certifies a margin only up to
// its scan bound.

#include <cstdint>
#include <string_view>
#include <vector>

#include "sadisc/torus.hpp"

namespace sadisc {

enum class ConditionKind { WDC, DC };

std::string_view kind_name(ConditionKind k) noexcept;

struct DiophantineReport {
  ConditionKind kind = ConditionKind::WDC;
  std::size_t b = 0;
  double tau = 0.0;
  std::int64_t scan_bound = 0;
  /// min over the scan of |n|^tau * distance; 0 marks a rational resonance.
  double gamma_lower = 0.0;
  /// Minimizer: one entry for WDC, b entries for DC.
  std::vector<std::int64_t> argmin;
};

/// min_{1<=n<=n_max} n^tau ||n alpha||_{T^b}. Requires tau >= 1/b.
DiophantineReport wdc_margin(const Frequency& alpha, double tau, std::int64_t n_max);

/// Default cap on (2*box_bound+1)^b lattice points visited by dc_margin.
inline constexpr double kDcScanBudget = 4e9;

/// min over 0 < ||n||_inf <= box_bound of ||n||_inf^tau ||<n, alpha>||_T, scanned
/// shell by shell (one of each pair +-n) and stopping at the first resonance.
/// Requires tau >= b. Throws std::length_error with the cost estimate when the
/// box exceeds `budget` points.
DiophantineReport dc_margin(const Frequency& alpha, double tau, std::int64_t box_bound,
                            double budget = kDcScanBudget);

/// Maximum number of partial quotients trusted in double precision.
inline constexpr int kContinuedFractionHorizon = 40;

/// Partial quotients a_1..a_k of x in (0,1); stops early when x is (numerically) rational.
std::vector<std::int64_t> continued_fraction(double x, int k);

}  // namespace sadisc
