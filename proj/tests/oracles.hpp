#pragma once

// Independent reference computations used only by the tests. Each one takes a
// different route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sadisc/qdynamics.hpp"
#include "sadisc/semialgebraic.hpp"
#include "sadisc/torus.hpp"

namespace oracle {

// frac(n * a) for a double a, exactly up to the final rounding: a = m 2^e with an
// integer mantissa, so n * m is an exact 128-bit product.
inline double frac_exact(std::int64_t n, double a) {
  int e = 0;
  const double mant = std::frexp(a, &e);  // a = mant * 2^e, 0.5 <= |mant| < 1
  const auto m = static_cast<__int128>(std::ldexp(mant, 53));
  const int shift = 53 - e;  // a = m / 2^shift
  if (shift <= 0) return 0.0;
  if (shift > 120) return std::fmod(static_cast<double>(n) * a, 1.0);
  const __int128 prod = static_cast<__int128>(n) * m;
  const __int128 mod = static_cast<__int128>(1) << shift;
  __int128 r = prod % mod;
  if (r < 0) r += mod;
  const double hi = static_cast<double>(static_cast<std::int64_t>(r >> 60));
  const double lo = static_cast<double>(static_cast<std::int64_t>(r & ((static_cast<__int128>(1) << 60) - 1)));
  return std::ldexp(hi, 60 - shift) + std::ldexp(lo, -shift);
}

inline double torus_dist(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, 1.0 - d);
}

// Star discrepancy by direct counting over every candidate corner (O(N^{b+1})).
inline double star_bruteforce(const std::vector<double>& pts, std::size_t b) {
  const std::size_t n = pts.size() / b;
  std::vector<std::vector<double>> cand(b);
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t i = 0; i < n; ++i) cand[j].push_back(pts[i * b + j]);
    cand[j].push_back(1.0);
  }
  double d = 0.0;
  std::vector<std::size_t> idx(b, 0);
  while (true) {
    double vol = 1.0;
    for (std::size_t j = 0; j < b; ++j) vol *= cand[j][idx[j]];
    std::size_t open = 0, closed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool o = true, c = true;
      for (std::size_t j = 0; j < b; ++j) {
        o = o && pts[i * b + j] < cand[j][idx[j]];
        c = c && pts[i * b + j] <= cand[j][idx[j]];
      }
      open += o;
      closed += c;
    }
    d = std::max({d, vol - static_cast<double>(open) / static_cast<double>(n),
                  static_cast<double>(closed) / static_cast<double>(n) - vol});
    std::size_t j = 0;
    while (j < b && ++idx[j] == cand[j].size()) idx[j++] = 0;
    if (j == b) break;
  }
  return d;
}

// min_{1<=n<=n_max} n^tau ||n alpha|| with the exact fractional parts.
inline std::pair<double, std::int64_t> wdc_bruteforce(const std::vector<double>& alpha, double tau,
                                                      std::int64_t n_max) {
  double best = INFINITY;
  std::int64_t arg = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double d = 0.0;
    for (double a : alpha) d = std::max(d, torus_dist(frac_exact(n, a), 0.0));
    const double m = std::pow(static_cast<double>(n), tau) * d;
    if (m < best) {
      best = m;
      arg = n;
    }
  }
  return {best, arg};
}

// Restricted matrix R (H - z) R assembled entry by entry, inverted by LU.
inline Eigen::MatrixXcd green_lu(const sadisc::OperatorSpec& spec, const sadisc::TorusVector& theta,
                                 std::int64_t lo, std::int64_t hi, std::complex<double> z) {
  const auto m = static_cast<Eigen::Index>(hi - lo + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::int64_t n = lo + i;
    std::vector<double> x(spec.alpha.dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double f = theta[j] + frac_exact(n, spec.alpha.coords[j]);
      x[j] = f - std::floor(f);
    }
    a(i, i) = spec.lambda * sadisc::evaluate_potential(spec, x) - z;
    for (const auto& t : spec.kernel) {
      const Eigen::Index k = i - t.offset;
      if (k >= 0 && k < m) a(i, k) += t.value;
    }
  }
  return a.partialPivLu().inverse();
}

// |psi_t(n)| for the free Laplacian on Z started at delta_0: |J_n(2t)|.
inline double free_amplitude(std::int64_t n, double t) {
  return std::abs(std::cyl_bessel_j(static_cast<double>(std::llabs(n)), 2.0 * t));
}

}  // namespace oracle
