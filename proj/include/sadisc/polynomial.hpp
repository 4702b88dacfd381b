#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sadisc {

struct Term {
  double coef = 0.0;
  std::vector<int> exponents;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Real polynomial in b variables, stored as a sparse list of monomials.
/// Duplicate exponent tuples are merged on construction and exact zeros dropped.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t dim, std::vector<Term> terms);

  static Polynomial constant(std::size_t dim, double c);
  /// sum_j coeffs[j] x_j + c
  static Polynomial affine(std::span<const double> coeffs, double c);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t term_count() const noexcept { return coefs_.size(); }
  int degree() const noexcept { return degree_; }
  bool is_affine() const noexcept { return degree_ <= 1; }
  std::vector<Term> terms() const;

  /// Compensated (Neumaier) sum of directly evaluated monomials.
  double evaluate(std::span<const double> x) const;
  double evaluate_unchecked(const double* x) const noexcept;

  /// Enclosure of the range over the box [lo, hi] with lo >= 0. Widened by a few
  /// ulps of the term magnitudes so probe evaluations never fall outside it.
  Interval range_over_box(std::span<const double> lo, std::span<const double> hi) const;

  /// Coefficients of x_1..x_b and the constant term; only meaningful if is_affine().
  std::vector<double> affine_coefficients() const;
  double constant_term() const noexcept;

 private:
  std::size_t dim_ = 0;
  int degree_ = 0;
  std::vector<double> coefs_;
  std::vector<int> exps_;  // term-major, dim_ entries per term
};

}  // namespace sadisc
