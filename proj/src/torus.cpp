#include "sadisc/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sadisc {

namespace {

inline double snap_unit(double f) noexcept {
  // f is in [0, 1] up to rounding; 1.0 can appear for tiny negative inputs.
  if (f < kFracSnap || f > 1.0 - kFracSnap) return 0.0;
  return f;
}

inline double frac_unchecked(double x) noexcept { return snap_unit(x - std::floor(x)); }

double dot(std::span<const double> u, std::span<const double> v) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

}  // namespace

TorusVector::TorusVector(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!(c >= 0.0 && c < 1.0)) throw std::domain_error("torus coordinate outside [0,1)");
  }
}

double frac(double x) {
  if (!std::isfinite(x)) throw std::domain_error("frac: non-finite input");
  return frac_unchecked(x);
}

TorusVector frac(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return frac(v); });
  return TorusVector(std::move(out));
}

double frac_of_multiple(std::int64_t n, double a) noexcept {
  const double nd = static_cast<double>(n);
  const double hi = nd * a;
  const double lo = std::fma(nd, a, -hi);
  const double f = hi - std::floor(hi);  // exact
  return frac_unchecked(f + lo);
}

double frac_of_dot(std::span<const std::int64_t> n, std::span<const double> a) noexcept {
  if (n.size() == 1) return frac_of_multiple(n[0], a[0]);
  // Neumaier summation of the exact fractional parts and the product tails.
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  };
  for (std::size_t j = 0; j < n.size(); ++j) {
    const double nd = static_cast<double>(n[j]);
    const double hi = nd * a[j];
    const double lo = std::fma(nd, a[j], -hi);
    add(hi - std::floor(hi));
    add(lo);
  }
  const double whole = std::floor(sum);
  return frac_unchecked((sum - whole) + comp);
}

void orbit_point_into(std::span<const double> theta, std::span<const double> alpha, std::int64_t n,
                      std::span<double> out) noexcept {
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double hi = nd * alpha[j];
    const double lo = std::fma(nd, alpha[j], -hi);
    const double f = hi - std::floor(hi);
    out[j] = frac_unchecked((f + theta[j]) + lo);
  }
}

TorusVector orbit_point(const TorusVector& theta, const Frequency& alpha, std::int64_t n) {
  if (theta.dim() != alpha.dim()) throw std::invalid_argument("orbit_point: dimension mismatch");
  if (n < 0 || n > kOrbitIndexBudget) throw std::out_of_range("orbit_point: n outside [0, 2^40]");
  std::vector<double> out(alpha.dim());
  orbit_point_into(theta.coords(), alpha.coords, n, out);
  return TorusVector(std::move(out));
}

double torus_norm(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double c : x) m = std::max(m, std::min(c, 1.0 - c));
  return m;
}

double angular_dist(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("angular_dist: dimension mismatch");
  const double uu = dot(u, u);
  const double vv = dot(v, v);
  if (uu == 0.0 || vv == 0.0) throw std::invalid_argument("angular_dist: zero vector");
  // |u|^2 |v|^2 - <u,v>^2 = sum_{i<j} (u_i v_j - u_j v_i)^2
  double wedge = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const double m = u[i] * v[j] - u[j] * v[i];
      wedge += m * m;
    }
  }
  return std::clamp(std::sqrt(wedge / uu / vv), 0.0, 1.0);
}

double subspace_angular_dist(std::span<const double> u, const std::vector<std::vector<double>>& basis) {
  const double uu = dot(u, u);
  if (uu == 0.0) throw std::invalid_argument("subspace_angular_dist: zero vector");
  if (basis.empty()) return 1.0;

  std::vector<std::vector<double>> q;
  q.reserve(basis.size());
  for (const auto& v : basis) {
    if (v.size() != u.size()) throw std::invalid_argument("subspace_angular_dist: dimension mismatch");
    std::vector<double> w = v;
    const double norm0 = std::sqrt(dot(w, w));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) {
        const double c = dot(w, e);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * e[i];
      }
    }
    const double norm = std::sqrt(dot(w, w));
    if (norm0 == 0.0 || norm <= 1e-12 * norm0) {
      throw std::invalid_argument("subspace_angular_dist: degenerate basis");
    }
    for (double& c : w) c /= norm;
    q.push_back(std::move(w));
  }

  std::vector<double> r(u.begin(), u.end());
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : q) {
      const double c = dot(r, e);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * e[i];
    }
  }
  return std::clamp(std::sqrt(dot(r, r) / uu), 0.0, 1.0);
}

TorusVector one_minus(const TorusVector& x) {
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = frac(1.0 - x[i]);
  return TorusVector(std::move(out));
}

}  // namespace sadisc
