#include "sadisc/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "orbit_scan.hpp"

namespace sadisc {

std::string_view kind_name(ConditionKind k) noexcept { return k == ConditionKind::WDC ? "WDC" : "DC"; }

namespace {

inline double dist_to_integer(double f) noexcept { return std::min(f, 1.0 - f); }

void check_frequency(const Frequency& alpha) {
  if (alpha.dim() == 0) throw std::invalid_argument("frequency must have dimension >= 1");
  for (double a : alpha.coords) {
    if (!std::isfinite(a)) throw std::domain_error("non-finite frequency coordinate");
  }
}

}  // namespace

DiophantineReport wdc_margin(const Frequency& alpha, double tau, std::int64_t n_max) {
  check_frequency(alpha);
  const std::size_t b = alpha.dim();
  if (n_max < 1) throw std::invalid_argument("wdc_margin: n_max must be >= 1");
  if (n_max > kOrbitIndexBudget) throw std::out_of_range("wdc_margin: n_max beyond the orbit accuracy budget");
  if (!(tau >= 1.0 / static_cast<double>(b))) throw std::invalid_argument("wdc_margin: tau must be >= 1/b");

  const detail::ScanMinimum m = detail::min_weighted_orbit_norm(alpha.coords, n_max, tau);
  DiophantineReport r{ConditionKind::WDC, b, tau, n_max, m.value, {m.argmin}};
  return r;
}

DiophantineReport dc_margin(const Frequency& alpha, double tau, std::int64_t box_bound, double budget) {
  check_frequency(alpha);
  const std::size_t b = alpha.dim();
  if (box_bound < 1) throw std::invalid_argument("dc_margin: box_bound must be >= 1");
  if (!(tau >= static_cast<double>(b))) throw std::invalid_argument("dc_margin: tau must be >= b");
  const double cost = std::pow(2.0 * static_cast<double>(box_bound) + 1.0, static_cast<double>(b));
  if (cost > budget) {
    std::ostringstream os;
    os << "dc_margin: scan of " << cost << " lattice points exceeds the budget of " << budget;
    throw std::length_error(os.str());
  }

  DiophantineReport r{ConditionKind::DC, b, tau, box_bound, std::numeric_limits<double>::infinity(), {}};
  std::vector<std::int64_t> n(b);
  for (std::int64_t s = 1; s <= box_bound; ++s) {
    const double weight = std::pow(static_cast<double>(s), tau);
    // Odometer over [-s, s]^b restricted to the shell max|n_j| = s and to the
    // representative whose first nonzero coordinate is positive.
    std::fill(n.begin(), n.end(), -s);
    while (true) {
      std::int64_t norm = 0;
      std::size_t first_nonzero = b;
      for (std::size_t j = 0; j < b; ++j) {
        norm = std::max<std::int64_t>(norm, std::llabs(n[j]));
        if (first_nonzero == b && n[j] != 0) first_nonzero = j;
      }
      if (norm == s && n[first_nonzero] > 0) {
        const double margin = weight * dist_to_integer(frac_of_dot(n, alpha.coords));
        if (margin < r.gamma_lower) {
          r.gamma_lower = margin;
          r.argmin = n;
        }
      }
      std::size_t j = 0;
      while (j < b && n[j] == s) n[j++] = -s;
      if (j == b) break;
      ++n[j];
    }
    if (r.gamma_lower == 0.0) break;
  }
  return r;
}

std::vector<std::int64_t> continued_fraction(double x, int k) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("continued_fraction: x must lie in (0,1)");
  if (k < 1 || k > kContinuedFractionHorizon) {
    throw std::out_of_range("continued_fraction: k beyond the double-precision horizon of 40");
  }
  std::vector<std::int64_t> out;
  double r = x;
  for (int i = 0; i < k; ++i) {
    const double inv = 1.0 / r;
    // Quotients within rounding of the next integer are rounded up, so that
    // rational inputs terminate instead of producing a spurious 1, N tail.
    const double a = std::floor(inv * (1.0 + 1e-12));
    out.push_back(static_cast<std::int64_t>(a));
    r = inv - a;
    if (r < 1e-9) break;
  }
  return out;
}

namespace detail {

ScanMinimum min_weighted_orbit_norm(std::span<const double> alpha, std::int64_t n_max, double tau) {
  constexpr std::int64_t kChunk = 1 << 14;
  const std::size_t b = alpha.size();
  const std::int64_t chunks = (n_max + kChunk - 1) / kChunk;
  std::vector<double> best(static_cast<std::size_t>(chunks), std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> where(static_cast<std::size_t>(chunks), 0);

#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    double m = std::numeric_limits<double>::infinity();
    std::int64_t arg = 0;
    const std::int64_t end = std::min(n_max, (c + 1) * kChunk);
    for (std::int64_t n = c * kChunk + 1; n <= end; ++n) {
      double d = 0.0;
      for (std::size_t j = 0; j < b; ++j) d = std::max(d, dist_to_integer(frac_of_multiple(n, alpha[j])));
      const double margin = tau == 0.0 ? d : std::pow(static_cast<double>(n), tau) * d;
      if (margin < m) {
        m = margin;
        arg = n;
      }
    }
    best[static_cast<std::size_t>(c)] = m;
    where[static_cast<std::size_t>(c)] = arg;
  }

  // Chunks are merged in order with a strict comparison, so ties keep the smallest n.
  ScanMinimum r{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t c = 0; c < best.size(); ++c) {
    if (best[c] < r.value) r = {best[c], where[c]};
  }
  return r;
}

}  // namespace detail

}  // namespace sadisc
