#pragma once

// Orbit hit counting #{1 <= n <= N : frac(theta + n alpha) in S}, classical
// (anchored-box) discrepancy of point sets, and the orbit separation check.

#include <cstdint>
#include <span>
#include <vector>

#include "sadisc/semialgebraic.hpp"
#include "sadisc/torus.hpp"

namespace sadisc {

struct HitCountResult {
  std::int64_t N = 0;
  std::int64_t count = 0;
  int set_degree = 0;
  /// NaN unless CountOptions::measure_samples > 0.
  double set_measure_estimate = 0.0;
  TorusVector theta;
  Frequency alpha;
};

struct CountOptions {
  std::int64_t measure_samples = 0;
  std::uint64_t seed = 0;
};

/// Counts n in [1, N]. Throws std::invalid_argument on dimension mismatch and
/// std::out_of_range when N is outside [1, kOrbitIndexBudget].
HitCountResult count_hits(const TorusVector& theta, const Frequency& alpha, std::int64_t N,
                          const SemiAlgebraicSet& s, double eq_tol = 0.0, const CountOptions& opts = {});

/// Counts n in [first, last] (inclusive); 0 for an empty range.
std::int64_t count_hits_in_range(const TorusVector& theta, const Frequency& alpha, std::int64_t first,
                                 std::int64_t last, const SemiAlgebraicSet& s, double eq_tol = 0.0);

/// Row-major block of orbit points frac(theta + n alpha), n = first .. first+count-1.
std::vector<double> orbit_block(const TorusVector& theta, const Frequency& alpha, std::int64_t first,
                                std::int64_t count);

enum class DiscrepancyFamily {
  Star,                // exact, b <= 2
  AnchoredBoxesApprox  // any b; a lower bound for the star discrepancy
};

/// Default cap on the number of histogram cells used by the approximate mode.
inline constexpr std::int64_t kApproxCellBudget = std::int64_t{1} << 22;

/// sup over anchored boxes [0,t) of |#{x_i in box}/N - vol|. `points` is row-major
/// with `dim` coordinates per point, each in [0,1).
/// The approximate mode takes the sup over corners drawn from the point
/// coordinates (a quantile subsample when there are too many) and a uniform
/// grid, so it equals the exact value whenever all coordinates fit the budget.
double classical_discrepancy(std::span<const double> points, std::size_t dim, DiscrepancyFamily family,
                             std::int64_t cell_budget = kApproxCellBudget);
double classical_discrepancy(const std::vector<TorusVector>& points, DiscrepancyFamily family);

/// Largest N accepted by the exact b = 2 star computation (O(N^2) work).
inline constexpr std::int64_t kExactStar2dLimit = std::int64_t{1} << 14;

struct SeparationResult {
  bool ok = false;
  double min_gap = 0.0;
  std::int64_t argmin = 0;
};

/// min_{1<=k<=N-1} ||k alpha||; ok when min_gap > gamma / N^tau.
SeparationResult separation_check(const Frequency& alpha, std::int64_t N, double gamma, double tau);

}  // namespace sadisc
