#include "sadisc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sadisc/lowerbound.hpp"

namespace sadisc::reference {

std::int64_t count_hits(const TorusVector& theta, const Frequency& alpha, std::int64_t first, std::int64_t last,
                        const SemiAlgebraicSet& s, double eq_tol) {
  std::int64_t count = 0;
  for (std::int64_t n = first; n <= last; ++n) {
    if (s.contains(orbit_point(theta, alpha, n), eq_tol)) ++count;
  }
  return count;
}

std::pair<double, std::int64_t> min_weighted_orbit_norm(const Frequency& alpha, std::int64_t n_max, double tau) {
  double best = std::numeric_limits<double>::infinity();
  std::int64_t arg = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double d = 0.0;
    for (double a : alpha.coords) {
      const double f = frac_of_multiple(n, a);
      d = std::max(d, std::min(f, 1.0 - f));
    }
    const double m = tau == 0.0 ? d : std::pow(static_cast<double>(n), tau) * d;
    if (m < best) {
      best = m;
      arg = n;
    }
  }
  return {best, arg};
}

std::optional<std::int64_t> search_window(const Frequency& alpha, std::int64_t N, double epsilon,
                                          const std::vector<double>& w, std::int64_t first) {
  const std::size_t b = alpha.dim();
  const std::int64_t last = window_search_limit(N, epsilon);
  const double h = window_half_width(N, epsilon, b);
  for (std::int64_t n = std::max<std::int64_t>(first, 1); n <= last; ++n) {
    bool in = true;
    for (std::size_t j = 0; j < b && in; ++j) {
      const double x = frac_of_multiple(n, alpha.coords[j]);
      in = x >= std::max(0.0, w[j] - h) && x <= std::min(1.0, w[j] + h);
    }
    if (in) return n;
  }
  return std::nullopt;
}

std::int64_t grid_cover_count(const SemiAlgebraicSet& s, double epsilon, int probe_density, double eq_tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("grid_cover_count: epsilon must lie in (0,1)");
  const std::size_t b = s.dim();
  const auto side = static_cast<std::int64_t>(std::ceil(1.0 / epsilon));
  const double sd = static_cast<double>(side);
  std::vector<std::int64_t> cell(b, 0);
  std::vector<double> lo(b), hi(b), x(b);
  std::vector<int> idx(b);
  bool all_affine = true;
  for (std::size_t c = 0; c < s.clauses().size(); ++c) all_affine = all_affine && s.clause_is_affine(c);
  std::int64_t count = 0;
  while (true) {
    for (std::size_t j = 0; j < b; ++j) {
      lo[j] = static_cast<double>(cell[j]) / sd;
      hi[j] = static_cast<double>(cell[j] + 1) / sd;
    }
    bool meets = false;
    for (std::size_t c = 0; c < s.clauses().size() && !meets; ++c) {
      if (s.clause_is_affine(c)) meets = affine_clause_meets_box(s, c, lo, hi, eq_tol);
    }
    if (!meets && !all_affine) {
      std::fill(idx.begin(), idx.end(), 0);
      while (!meets) {
        for (std::size_t j = 0; j < b; ++j) {
          x[j] = (static_cast<double>(cell[j]) + (idx[j] + 0.5) / probe_density) / sd;
        }
        meets = s.contains(x, eq_tol);
        std::size_t j = 0;
        while (j < b && ++idx[j] == probe_density) idx[j++] = 0;
        if (j == b) break;
      }
    }
    if (meets) ++count;
    std::size_t j = 0;
    while (j < b && ++cell[j] == side) cell[j++] = 0;
    if (j == b) break;
  }
  return count;
}

}  // namespace sadisc::reference
