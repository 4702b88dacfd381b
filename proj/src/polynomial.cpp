#include "sadisc/polynomial.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sadisc {

namespace {

inline double powi(double x, int e) noexcept {
  double r = 1.0;
  double b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

Polynomial::Polynomial(std::size_t dim, std::vector<Term> terms) : dim_(dim) {
  std::map<std::vector<int>, double> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != dim) throw std::invalid_argument("polynomial term has wrong arity");
    for (int e : t.exponents) {
      if (e < 0) throw std::invalid_argument("negative exponent");
    }
    if (!std::isfinite(t.coef)) throw std::invalid_argument("non-finite coefficient");
    merged[t.exponents] += t.coef;
  }
  for (const auto& [exps, c] : merged) {
    if (c == 0.0) continue;
    coefs_.push_back(c);
    exps_.insert(exps_.end(), exps.begin(), exps.end());
    degree_ = std::max(degree_, std::accumulate(exps.begin(), exps.end(), 0));
  }
}

Polynomial Polynomial::constant(std::size_t dim, double c) {
  return Polynomial(dim, {Term{c, std::vector<int>(dim, 0)}});
}

Polynomial Polynomial::affine(std::span<const double> coeffs, double c) {
  const std::size_t dim = coeffs.size();
  std::vector<Term> terms;
  terms.push_back(Term{c, std::vector<int>(dim, 0)});
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<int> e(dim, 0);
    e[j] = 1;
    terms.push_back(Term{coeffs[j], std::move(e)});
  }
  return Polynomial(dim, std::move(terms));
}

std::vector<Term> Polynomial::terms() const {
  std::vector<Term> out;
  for (std::size_t t = 0; t < coefs_.size(); ++t) {
    out.push_back(Term{coefs_[t], std::vector<int>(exps_.begin() + t * dim_, exps_.begin() + (t + 1) * dim_)});
  }
  return out;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("polynomial evaluation: dimension mismatch");
  return evaluate_unchecked(x.data());
}

double Polynomial::evaluate_unchecked(const double* x) const noexcept {
  double sum = 0.0;
  double comp = 0.0;
  const int* e = exps_.data();
  for (std::size_t t = 0; t < coefs_.size(); ++t, e += dim_) {
    double v = coefs_[t];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (e[j] != 0) v *= powi(x[j], e[j]);
    }
    const double s = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  return sum + comp;
}

Interval Polynomial::range_over_box(std::span<const double> lo, std::span<const double> hi) const {
  double a = 0.0;
  double b = 0.0;
  double mag = 0.0;
  const int* e = exps_.data();
  for (std::size_t t = 0; t < coefs_.size(); ++t, e += dim_) {
    double mlo = 1.0;
    double mhi = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (e[j] == 0) continue;
      mlo *= powi(lo[j], e[j]);
      mhi *= powi(hi[j], e[j]);
    }
    const double c = coefs_[t];
    if (c >= 0.0) {
      a += c * mlo;
      b += c * mhi;
    } else {
      a += c * mhi;
      b += c * mlo;
    }
    mag += std::fabs(c) * mhi;
  }
  const double pad = 64.0 * std::numeric_limits<double>::epsilon() * mag + std::numeric_limits<double>::min();
  return {a - pad, b + pad};
}

std::vector<double> Polynomial::affine_coefficients() const {
  std::vector<double> out(dim_, 0.0);
  const int* e = exps_.data();
  for (std::size_t t = 0; t < coefs_.size(); ++t, e += dim_) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (e[j] == 1) out[j] += coefs_[t];
    }
  }
  return out;
}

double Polynomial::constant_term() const noexcept {
  const int* e = exps_.data();
  for (std::size_t t = 0; t < coefs_.size(); ++t, e += dim_) {
    bool all_zero = true;
    for (std::size_t j = 0; j < dim_; ++j) all_zero = all_zero && e[j] == 0;
    if (all_zero) return coefs_[t];
  }
  return 0.0;
}

}  // namespace sadisc
