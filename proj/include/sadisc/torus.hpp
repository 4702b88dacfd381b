#pragma once

// Arithmetic on the b-torus [0,1)^b: fractional parts, Kronecker orbit points,
// the sup-distance to Z^b and the angular distance between directions.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sadisc {

/// A point of [0,1)^b. Construction rejects coordinates outside the half-open cube.
class TorusVector {
 public:
  TorusVector() = default;
  explicit TorusVector(std::vector<double> coords);

  static TorusVector zero(std::size_t dim) { return TorusVector(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const TorusVector&, const TorusVector&) = default;

 private:
  std::vector<double> coords_;
};

/// Frequency vector alpha. Coordinates are raw doubles; `tag` is documentation
/// only (for instance "sqrt(2) mod 1").
struct Frequency {
  std::vector<double> coords;
  std::string tag;

  std::size_t dim() const noexcept { return coords.size(); }
};

/// Largest orbit index accepted by orbit_point.
inline constexpr std::int64_t kOrbitIndexBudget = std::int64_t{1} << 40;

/// Values closer than this to an integer have fractional part 0.
inline constexpr double kFracSnap = 0x1.0p-50;

/// Scalar fractional part in [0,1). Throws std::domain_error on non-finite input.
double frac(double x);

TorusVector frac(std::span<const double> x);

/// frac(n * a) for an integer n and real a via an error-free product, so the
/// error does not grow with n. Requires |n| <= 2^53.
double frac_of_multiple(std::int64_t n, double a) noexcept;

/// frac(sum_j n_j a_j) with compensated products and summation.
double frac_of_dot(std::span<const std::int64_t> n, std::span<const double> a) noexcept;

/// Writes frac(theta + n alpha) into `out` without allocating. No argument checks;
/// callers are the counting kernels, which validate once up front.
void orbit_point_into(std::span<const double> theta, std::span<const double> alpha, std::int64_t n,
                      std::span<double> out) noexcept;

/// frac(theta + n alpha). Throws std::out_of_range if n is negative or beyond
/// kOrbitIndexBudget and std::invalid_argument on a dimension mismatch.
TorusVector orbit_point(const TorusVector& theta, const Frequency& alpha, std::int64_t n);

/// max_j min(c_j, 1 - c_j), the distance to Z^b in the sup norm.
double torus_norm(std::span<const double> x) noexcept;
inline double torus_norm(const TorusVector& x) noexcept { return torus_norm(x.coords()); }

/// sqrt(1 - <u,v>^2 / (<u,u><v,v>)); 0 for parallel, 1 for orthogonal directions.
/// Evaluated through the Lagrange identity to avoid cancellation near 0.
double angular_dist(std::span<const double> u, std::span<const double> v);

/// Minimum of angular_dist(u, v) over nonzero v in span(basis), computed from the
/// component of u orthogonal to the span. Throws on a degenerate basis or zero u.
double subspace_angular_dist(std::span<const double> u, const std::vector<std::vector<double>>& basis);

/// c -> frac(1 - c), coordinatewise.
TorusVector one_minus(const TorusVector& x);

}  // namespace sadisc
