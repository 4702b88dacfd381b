#pragma once

// Single-threaded reference versions of the parallel kernels. Same semantics,
// plain loops; the test suite checks exact agreement and bench/ times both.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sadisc/semialgebraic.hpp"
#include "sadisc/torus.hpp"

namespace sadisc::reference {

std::int64_t count_hits(const TorusVector& theta, const Frequency& alpha, std::int64_t first, std::int64_t last,
                        const SemiAlgebraicSet& s, double eq_tol);

/// (min_{1<=n<=n_max} n^tau ||n alpha||, smallest minimizer).
std::pair<double, std::int64_t> min_weighted_orbit_norm(const Frequency& alpha, std::int64_t n_max, double tau);

std::optional<std::int64_t> search_window(const Frequency& alpha, std::int64_t N, double epsilon,
                                          const std::vector<double>& w, std::int64_t first = 1);

/// Visits every grid cell (no pruning) with the same per-cell decision as grid_cover_count.
std::int64_t grid_cover_count(const SemiAlgebraicSet& s, double epsilon, int probe_density, double eq_tol);

}  // namespace sadisc::reference
