#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sadisc/semialgebraic.hpp"

namespace sadisc {

namespace {

// a . x + c >= 0, or > 0 when strict.
struct Inequality {
  std::vector<double> a;
  double c = 0.0;
  bool strict = false;
};

void normalize(Inequality& q) {
  double m = 0.0;
  for (double v : q.a) m = std::max(m, std::fabs(v));
  if (m > 0.0 && m != 1.0) {
    for (double& v : q.a) v /= m;
    q.c /= m;
  }
}

bool fourier_motzkin_feasible(std::vector<Inequality> sys, std::size_t dim) {
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Inequality> pos, neg, next;
    for (auto& q : sys) {
      if (q.a[k] > 0.0) {
        pos.push_back(std::move(q));
      } else if (q.a[k] < 0.0) {
        neg.push_back(std::move(q));
      } else {
        next.push_back(std::move(q));
      }
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        const double wp = -n.a[k];
        const double wn = p.a[k];
        Inequality r;
        r.a.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) r.a[j] = wp * p.a[j] + wn * n.a[j];
        r.a[k] = 0.0;
        r.c = wp * p.c + wn * n.c;
        r.strict = p.strict || n.strict;
        normalize(r);
        next.push_back(std::move(r));
      }
    }
    sys = std::move(next);
  }
  for (const auto& q : sys) {
    if (q.strict ? !(q.c > 0.0) : !(q.c >= 0.0)) return false;
  }
  return true;
}

inline double edge(std::int64_t i, std::int64_t side) { return static_cast<double>(i) / static_cast<double>(side); }

class CoverCounter {
 public:
  CoverCounter(const SemiAlgebraicSet& s, std::int64_t side, int probe_density, double eq_tol)
      : s_(s), side_(side), pd_(probe_density), eq_tol_(eq_tol), b_(s.dim()) {
    for (int p = 0; p < pd_; ++p) offsets_.push_back((p + 0.5) / pd_);
    for (std::size_t c = 0; c < s.clauses().size(); ++c) {
      if (s.clause_is_affine(c)) affine_clauses_.push_back(c);
    }
  }

  struct Node {
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
  };

  bool may_meet(const Node& node, std::vector<Interval>& ranges, std::vector<char>& have) const {
    std::vector<double> lo(b_), hi(b_);
    for (std::size_t j = 0; j < b_; ++j) {
      lo[j] = edge(node.lo[j], side_);
      hi[j] = edge(node.hi[j], side_);
    }
    std::fill(have.begin(), have.end(), 0);
    for (const auto& clause : s_.clauses()) {
      bool ok = true;
      for (const auto& cond : clause) {
        if (!have[cond.poly_index]) {
          ranges[cond.poly_index] = s_.polys()[cond.poly_index].range_over_box(lo, hi);
          have[cond.poly_index] = 1;
        }
        const Interval r = ranges[cond.poly_index];
        switch (cond.relation) {
          case Relation::GreaterEq: ok = r.hi >= 0.0; break;
          case Relation::LessEq: ok = r.lo <= 0.0; break;
          case Relation::Equal: ok = r.lo <= eq_tol_ && r.hi >= -eq_tol_; break;
        }
        if (!ok) break;
      }
      if (ok) return true;
    }
    return false;
  }

  bool cell_meets(std::span<const std::int64_t> cell) const {
    std::vector<double> lo(b_), hi(b_);
    for (std::size_t j = 0; j < b_; ++j) {
      lo[j] = edge(cell[j], side_);
      hi[j] = edge(cell[j] + 1, side_);
    }
    for (std::size_t c : affine_clauses_) {
      if (affine_clause_meets_box(s_, c, lo, hi, eq_tol_)) return true;
    }
    if (affine_clauses_.size() == s_.clauses().size()) return false;

    // Probe lattice, odometer over pd^b points.
    std::vector<int> idx(b_, 0);
    std::vector<double> x(b_);
    const double side = static_cast<double>(side_);
    while (true) {
      for (std::size_t j = 0; j < b_; ++j) x[j] = (static_cast<double>(cell[j]) + offsets_[idx[j]]) / side;
      if (s_.contains_unchecked(x.data(), eq_tol_)) return true;
      std::size_t j = 0;
      while (j < b_ && ++idx[j] == pd_) idx[j++] = 0;
      if (j == b_) break;
    }
    return false;
  }

  std::int64_t count(const Node& node) const {
    std::vector<Interval> ranges(s_.polys().size());
    std::vector<char> have(s_.polys().size());
    return count_rec(node, ranges, have);
  }

  // Splits the root until there are at least `target` disjoint subtrees.
  std::vector<Node> frontier(std::size_t target) const {
    std::vector<Node> nodes{Node{std::vector<std::int64_t>(b_, 0), std::vector<std::int64_t>(b_, side_)}};
    while (nodes.size() < target) {
      std::vector<Node> next;
      bool split_any = false;
      for (const auto& n : nodes) {
        auto [a, c] = split(n);
        if (c) {
          next.push_back(std::move(a));
          next.push_back(std::move(*c));
          split_any = true;
        } else {
          next.push_back(std::move(a));
        }
      }
      nodes = std::move(next);
      if (!split_any) break;
    }
    return nodes;
  }

 private:
  std::pair<Node, std::optional<Node>> split(const Node& n) const {
    std::size_t axis = 0;
    std::int64_t widest = 0;
    for (std::size_t j = 0; j < b_; ++j) {
      const std::int64_t w = n.hi[j] - n.lo[j];
      if (w > widest) {
        widest = w;
        axis = j;
      }
    }
    if (widest <= 1) return {n, std::nullopt};
    Node left = n;
    Node right = n;
    const std::int64_t mid = n.lo[axis] + widest / 2;
    left.hi[axis] = mid;
    right.lo[axis] = mid;
    return {std::move(left), std::move(right)};
  }

  std::int64_t count_rec(const Node& node, std::vector<Interval>& ranges, std::vector<char>& have) const {
    if (!may_meet(node, ranges, have)) return 0;
    auto [left, right] = split(node);
    if (!right) return cell_meets(node.lo) ? 1 : 0;
    return count_rec(left, ranges, have) + count_rec(*right, ranges, have);
  }

  const SemiAlgebraicSet& s_;
  std::int64_t side_;
  int pd_;
  double eq_tol_;
  std::size_t b_;
  std::vector<double> offsets_;
  std::vector<std::size_t> affine_clauses_;
};

}  // namespace

bool affine_clause_meets_box(const SemiAlgebraicSet& s, std::size_t clause, std::span<const double> lo,
                             std::span<const double> hi, double eq_tol) {
  const std::size_t b = s.dim();
  std::vector<Inequality> sys;
  for (std::size_t j = 0; j < b; ++j) {
    Inequality lower{std::vector<double>(b, 0.0), -lo[j], false};
    lower.a[j] = 1.0;
    Inequality upper{std::vector<double>(b, 0.0), hi[j], true};
    upper.a[j] = -1.0;
    sys.push_back(std::move(lower));
    sys.push_back(std::move(upper));
  }
  for (const auto& cond : s.clauses()[clause]) {
    const Polynomial& p = s.polys()[cond.poly_index];
    const std::vector<double> a = p.affine_coefficients();
    const double c = p.constant_term();
    std::vector<double> neg_a(a);
    for (double& v : neg_a) v = -v;
    switch (cond.relation) {
      case Relation::GreaterEq: sys.push_back({a, c, false}); break;
      case Relation::LessEq: sys.push_back({neg_a, -c, false}); break;
      case Relation::Equal:
        sys.push_back({a, c + eq_tol, false});
        sys.push_back({neg_a, eq_tol - c, false});
        break;
    }
  }
  for (auto& q : sys) normalize(q);
  return fourier_motzkin_feasible(std::move(sys), b);
}

CoverReport grid_cover_count(const SemiAlgebraicSet& s, double epsilon, int probe_density, double eq_tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("grid_cover_count: epsilon must lie in (0,1)");
  if (probe_density < 1) throw std::invalid_argument("grid_cover_count: probe_density must be >= 1");
  if (eq_tol < 0.0) throw std::invalid_argument("grid_cover_count: eq_tol must be >= 0");
  const auto side = static_cast<std::int64_t>(std::ceil(1.0 / epsilon));
  const double total = std::pow(static_cast<double>(side), static_cast<double>(s.dim()));
  if (total > 0x1.0p62) throw std::invalid_argument("grid_cover_count: grid too large");

  CoverCounter counter(s, side, probe_density, eq_tol);
  const auto nodes = counter.frontier(256);
  const auto n = static_cast<std::int64_t>(nodes.size());
  std::int64_t cells = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : cells)
  for (std::int64_t i = 0; i < n; ++i) cells += counter.count(nodes[static_cast<std::size_t>(i)]);
  return {epsilon, cells, side};
}

}  // namespace sadisc
