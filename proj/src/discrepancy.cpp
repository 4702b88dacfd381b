#include "sadisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "orbit_scan.hpp"

namespace sadisc {

namespace {

constexpr std::int64_t kCountChunk = 1 << 13;

void check_orbit_args(const TorusVector& theta, const Frequency& alpha) {
  if (alpha.dim() == 0) throw std::invalid_argument("frequency must have dimension >= 1");
  if (theta.dim() != alpha.dim()) throw std::invalid_argument("theta and alpha dimensions differ");
  for (double a : alpha.coords) {
    if (!std::isfinite(a)) throw std::domain_error("non-finite frequency coordinate");
  }
}

}  // namespace

std::int64_t count_hits_in_range(const TorusVector& theta, const Frequency& alpha, std::int64_t first,
                                 std::int64_t last, const SemiAlgebraicSet& s, double eq_tol) {
  check_orbit_args(theta, alpha);
  if (s.dim() != alpha.dim()) throw std::invalid_argument("set dimension differs from the orbit dimension");
  if (first < 0 || last > kOrbitIndexBudget) throw std::out_of_range("orbit index range outside [0, 2^40]");
  if (last < first) return 0;

  const std::size_t b = alpha.dim();
  const std::int64_t total = last - first + 1;
  const std::int64_t chunks = (total + kCountChunk - 1) / kCountChunk;
  std::int64_t count = 0;

#pragma omp parallel reduction(+ : count)
  {
    std::vector<double> x(b);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::int64_t lo = first + c * kCountChunk;
      const std::int64_t hi = std::min(last, lo + kCountChunk - 1);
      std::int64_t local = 0;
      for (std::int64_t n = lo; n <= hi; ++n) {
        orbit_point_into(theta.coords(), alpha.coords, n, x);
        if (s.contains_unchecked(x.data(), eq_tol)) ++local;
      }
      count += local;
    }
  }
  return count;
}

HitCountResult count_hits(const TorusVector& theta, const Frequency& alpha, std::int64_t N,
                          const SemiAlgebraicSet& s, double eq_tol, const CountOptions& opts) {
  if (N < 1 || N > kOrbitIndexBudget) throw std::out_of_range("count_hits: N must lie in [1, 2^40]");
  HitCountResult r;
  r.N = N;
  r.count = count_hits_in_range(theta, alpha, 1, N, s, eq_tol);
  r.set_degree = s.degree();
  r.set_measure_estimate = opts.measure_samples > 0
                               ? measure_estimate(s, opts.measure_samples, opts.seed, eq_tol).mean
                               : std::numeric_limits<double>::quiet_NaN();
  r.theta = theta;
  r.alpha = alpha;
  return r;
}

std::vector<double> orbit_block(const TorusVector& theta, const Frequency& alpha, std::int64_t first,
                                std::int64_t count) {
  check_orbit_args(theta, alpha);
  if (count < 0 || first < 0 || first + count - 1 > kOrbitIndexBudget) {
    throw std::out_of_range("orbit_block: index range outside [0, 2^40]");
  }
  const std::size_t b = alpha.dim();
  std::vector<double> out(static_cast<std::size_t>(count) * b);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    orbit_point_into(theta.coords(), alpha.coords, first + i,
                     std::span<double>(out.data() + static_cast<std::size_t>(i) * b, b));
  }
  return out;
}

SeparationResult separation_check(const Frequency& alpha, std::int64_t N, double gamma, double tau) {
  if (alpha.dim() == 0) throw std::invalid_argument("frequency must have dimension >= 1");
  if (N < 2) throw std::invalid_argument("separation_check: N must be >= 2");
  if (N - 1 > kOrbitIndexBudget) throw std::out_of_range("separation_check: N beyond the orbit accuracy budget");
  const detail::ScanMinimum m = detail::min_weighted_orbit_norm(alpha.coords, N - 1, 0.0);
  const double threshold = gamma / std::pow(static_cast<double>(N), tau);
  return {m.value > threshold, m.value, m.argmin};
}

}  // namespace sadisc
