#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sadisc/discrepancy.hpp"

namespace sadisc {

namespace {

double star_1d(std::span<const double> pts) {
  std::vector<double> x(pts.begin(), pts.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - x[i], x[i] - k / n});
  }
  return d;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t index_of(const std::vector<double>& t, double v) {
  return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), v) - t.begin());
}

// Corners range over point coordinates and 1. For a fixed corner (s, t) the
// sup of vol - count is attained with the open count, the sup of count - vol
// with the closed count.
double star_2d(std::span<const double> pts) {
  const std::size_t n = pts.size() / 2;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pts[2 * i];
    ys[i] = pts[2 * i + 1];
  }
  std::vector<double> tx = xs, ty = ys;
  tx.push_back(1.0);
  ty.push_back(1.0);
  tx = sorted_unique(std::move(tx));
  ty = sorted_unique(std::move(ty));

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<std::size_t> yidx(n);
  for (std::size_t i = 0; i < n; ++i) yidx[i] = index_of(ty, ys[i]);

  std::vector<std::int64_t> open_cnt(ty.size(), 0), closed_cnt(ty.size(), 0);
  std::size_t next_open = 0, next_closed = 0;
  const double inv_n = 1.0 / static_cast<double>(n);
  double d = 0.0;
  for (double s : tx) {
    while (next_open < n && xs[order[next_open]] < s) ++open_cnt[yidx[order[next_open++]]];
    while (next_closed < n && xs[order[next_closed]] <= s) ++closed_cnt[yidx[order[next_closed++]]];
    std::int64_t below = 0, at_or_below = 0;
    for (std::size_t j = 0; j < ty.size(); ++j) {
      at_or_below += closed_cnt[j];
      const double vol = s * ty[j];
      d = std::max({d, vol - static_cast<double>(below) * inv_n, static_cast<double>(at_or_below) * inv_n - vol});
      below += open_cnt[j];
    }
  }
  return d;
}

std::int64_t integer_root(std::int64_t budget, std::size_t b) {
  auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(b))));
  auto pow_le = [&](std::int64_t x) {
    double p = 1.0;
    for (std::size_t j = 0; j < b; ++j) p *= static_cast<double>(x);
    return p <= static_cast<double>(budget);
  };
  while (r > 1 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

std::vector<double> approx_thresholds(std::vector<double> coords, std::int64_t per_axis) {
  std::vector<double> u = sorted_unique(std::move(coords));
  std::vector<double> t;
  std::int64_t grid = 0;
  if (static_cast<std::int64_t>(u.size()) + 1 <= per_axis) {
    t = u;
    grid = per_axis - static_cast<std::int64_t>(u.size()) - 1;
  } else {
    grid = per_axis / 4;
    const std::int64_t m = per_axis - grid - 1;
    for (std::int64_t k = 0; k < m; ++k) {
      const std::size_t i = static_cast<std::size_t>((static_cast<double>(k) + 0.5) * static_cast<double>(u.size()) /
                                                     static_cast<double>(m));
      t.push_back(u[std::min(i, u.size() - 1)]);
    }
  }
  for (std::int64_t k = 1; k <= grid; ++k) t.push_back(static_cast<double>(k) / static_cast<double>(grid));
  t.push_back(1.0);
  return sorted_unique(std::move(t));
}

double star_approx(std::span<const double> pts, std::size_t b, std::int64_t cell_budget) {
  const std::size_t n = pts.size() / b;
  const std::int64_t per_axis = integer_root(cell_budget, b) - 1;
  if (per_axis < 2) throw std::invalid_argument("classical_discrepancy: cell budget too small for this dimension");

  std::vector<std::vector<double>> t(b);
  std::vector<std::size_t> extent(b), stride(b);
  std::size_t cells = 1;
  for (std::size_t j = 0; j < b; ++j) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = pts[i * b + j];
    t[j] = approx_thresholds(std::move(c), per_axis);
    extent[j] = t[j].size() + 1;
    stride[j] = cells;
    cells *= extent[j];
  }

  // Histogram by (#thresholds <= x) for open boxes and (#thresholds < x) for
  // closed boxes; prefix sums along every axis turn them into box counts.
  std::vector<std::int64_t> open_h(cells, 0), closed_h(cells, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t o = 0, c = 0;
    for (std::size_t j = 0; j < b; ++j) {
      const double x = pts[i * b + j];
      o += static_cast<std::size_t>(std::upper_bound(t[j].begin(), t[j].end(), x) - t[j].begin()) * stride[j];
      c += static_cast<std::size_t>(std::lower_bound(t[j].begin(), t[j].end(), x) - t[j].begin()) * stride[j];
    }
    ++open_h[o];
    ++closed_h[c];
  }
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t k = 0; k < cells; ++k) {
      if ((k / stride[j]) % extent[j] != 0) {
        open_h[k] += open_h[k - stride[j]];
        closed_h[k] += closed_h[k - stride[j]];
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  double d = 0.0;
#pragma omp parallel for schedule(static) reduction(max : d)
  for (std::size_t k = 0; k < cells; ++k) {
    double vol = 1.0;
    bool inside = true;
    for (std::size_t j = 0; j < b && inside; ++j) {
      const std::size_t i = (k / stride[j]) % extent[j];
      if (i + 1 == extent[j]) inside = false;
      else vol *= t[j][i];
    }
    if (!inside) continue;
    d = std::max({d, vol - static_cast<double>(open_h[k]) * inv_n, static_cast<double>(closed_h[k]) * inv_n - vol});
  }
  return d;
}

}  // namespace

double classical_discrepancy(std::span<const double> points, std::size_t dim, DiscrepancyFamily family,
                             std::int64_t cell_budget) {
  if (dim == 0) throw std::invalid_argument("classical_discrepancy: dimension must be >= 1");
  if (points.empty() || points.size() % dim != 0) {
    throw std::invalid_argument("classical_discrepancy: need a nonempty set of dim-tuples");
  }
  for (double x : points) {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("classical_discrepancy: coordinates must lie in [0,1)");
  }
  const std::size_t n = points.size() / dim;
  if (family == DiscrepancyFamily::Star) {
    if (dim == 1) return star_1d(points);
    if (dim == 2) {
      if (static_cast<std::int64_t>(n) > kExactStar2dLimit) {
        std::ostringstream os;
        os << "classical_discrepancy: exact 2-d star mode is limited to " << kExactStar2dLimit << " points";
        throw std::length_error(os.str());
      }
      return star_2d(points);
    }
    throw std::invalid_argument("classical_discrepancy: exact star mode supports b <= 2 only");
  }
  return star_approx(points, dim, cell_budget);
}

double classical_discrepancy(const std::vector<TorusVector>& points, DiscrepancyFamily family) {
  if (points.empty()) throw std::invalid_argument("classical_discrepancy: empty point set");
  const std::size_t dim = points.front().dim();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.dim() != dim) throw std::invalid_argument("classical_discrepancy: mixed dimensions");
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  return classical_discrepancy(flat, dim, family);
}

}  // namespace sadisc
