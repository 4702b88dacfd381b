#include "sadisc/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sadisc {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return f;
}

ExponentFit fit_exponent(std::span<const std::pair<std::int64_t, std::int64_t>> points) {
  std::set<std::int64_t> distinct;
  for (const auto& [n, c] : points) {
    if (n < 1) throw std::invalid_argument("fit_exponent: N must be >= 1");
    if (c < 0) throw std::invalid_argument("fit_exponent: counts must be >= 0");
    distinct.insert(n);
  }
  if (distinct.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 distinct N");
  std::vector<double> lx, ly;
  for (const auto& [n, c] : points) {
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(static_cast<double>(std::max<std::int64_t>(c, 1))));
  }
  const LinearFit f = least_squares(lx, ly);
  return {{points.begin(), points.end()}, f.slope, f.intercept, f.r_squared};
}

}  // namespace sadisc
