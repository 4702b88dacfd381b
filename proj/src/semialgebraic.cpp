#include "sadisc/semialgebraic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sadisc/rng.hpp"

namespace sadisc {

std::string_view relation_symbol(Relation r) noexcept {
  switch (r) {
    case Relation::GreaterEq: return ">=";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "==";
  }
  return "?";
}

SemiAlgebraicSet::SemiAlgebraicSet(std::size_t dim, std::vector<Polynomial> polys, std::vector<Clause> clauses,
                                   std::optional<int> declared_degree)
    : dim_(dim), polys_(std::move(polys)), clauses_(std::move(clauses)), declared_(declared_degree) {
  if (dim_ == 0) throw std::invalid_argument("semi-algebraic set needs dimension >= 1");
  for (const auto& p : polys_) {
    if (p.dim() != dim_) throw std::invalid_argument("polynomial dimension does not match the set");
  }
  for (const auto& clause : clauses_) {
    for (const auto& cond : clause) {
      if (cond.poly_index >= polys_.size()) throw std::invalid_argument("sign condition addresses a missing polynomial");
    }
  }
  if (declared_ && *declared_ < degree()) {
    throw std::invalid_argument("declared degree is below s*d of the representation");
  }
}

SemiAlgebraicSet SemiAlgebraicSet::full_cube(std::size_t dim) { return SemiAlgebraicSet(dim, {}, {Clause{}}); }

SemiAlgebraicSet SemiAlgebraicSet::empty(std::size_t dim) { return SemiAlgebraicSet(dim, {}, {}); }

SemiAlgebraicSet SemiAlgebraicSet::hyperplane_in_cube(std::span<const double> normal, double offset) {
  const std::size_t b = normal.size();
  std::vector<Polynomial> polys;
  Clause clause;
  polys.push_back(Polynomial::affine(normal, -offset));
  clause.push_back({0, Relation::Equal});
  for (std::size_t j = 0; j < b; ++j) {
    std::vector<double> e(b, 0.0);
    e[j] = 1.0;
    polys.push_back(Polynomial::affine(e, 0.0));
    clause.push_back({polys.size() - 1, Relation::GreaterEq});
    e[j] = -1.0;
    polys.push_back(Polynomial::affine(e, 1.0));
    clause.push_back({polys.size() - 1, Relation::GreaterEq});
  }
  return SemiAlgebraicSet(b, std::move(polys), {std::move(clause)});
}

SemiAlgebraicSet SemiAlgebraicSet::box(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box: dimension mismatch");
  const std::size_t b = lo.size();
  std::vector<Polynomial> polys;
  Clause clause;
  for (std::size_t j = 0; j < b; ++j) {
    std::vector<double> e(b, 0.0);
    e[j] = 1.0;
    polys.push_back(Polynomial::affine(e, -lo[j]));
    clause.push_back({polys.size() - 1, Relation::GreaterEq});
    e[j] = -1.0;
    polys.push_back(Polynomial::affine(e, hi[j]));
    clause.push_back({polys.size() - 1, Relation::GreaterEq});
  }
  return SemiAlgebraicSet(b, std::move(polys), {std::move(clause)});
}

int SemiAlgebraicSet::degree() const noexcept {
  int d = 0;
  for (const auto& p : polys_) d = std::max(d, p.degree());
  return static_cast<int>(polys_.size()) * d;
}

bool SemiAlgebraicSet::contains(std::span<const double> x, double eq_tol) const {
  if (x.size() != dim_) throw std::invalid_argument("contains: dimension mismatch");
  if (eq_tol < 0.0) throw std::invalid_argument("contains: eq_tol must be >= 0");
  return contains_unchecked(x.data(), eq_tol);
}

bool SemiAlgebraicSet::contains_unchecked(const double* x, double eq_tol) const noexcept {
  for (const auto& clause : clauses_) {
    bool ok = true;
    for (const auto& cond : clause) {
      const double v = polys_[cond.poly_index].evaluate_unchecked(x);
      switch (cond.relation) {
        case Relation::GreaterEq: ok = v >= 0.0; break;
        case Relation::LessEq: ok = v <= 0.0; break;
        case Relation::Equal: ok = std::fabs(v) <= eq_tol; break;
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

bool SemiAlgebraicSet::clause_is_affine(std::size_t clause) const noexcept {
  for (const auto& cond : clauses_[clause]) {
    if (!polys_[cond.poly_index].is_affine()) return false;
  }
  return true;
}

SemiAlgebraicSet unite(const SemiAlgebraicSet& a, const SemiAlgebraicSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("unite: dimension mismatch");
  std::vector<Polynomial> polys = a.polys();
  polys.insert(polys.end(), b.polys().begin(), b.polys().end());
  std::vector<Clause> clauses = a.clauses();
  const std::size_t shift = a.polys().size();
  for (Clause c : b.clauses()) {
    for (auto& cond : c) cond.poly_index += shift;
    clauses.push_back(std::move(c));
  }
  return SemiAlgebraicSet(a.dim(), std::move(polys), std::move(clauses));
}

int degree(const SemiAlgebraicSet& s) noexcept { return s.degree(); }

MeasureEstimate measure_estimate(const SemiAlgebraicSet& s, std::int64_t samples, std::uint64_t seed,
                                 double eq_tol) {
  if (samples < 1) throw std::invalid_argument("measure_estimate: samples must be >= 1");
  constexpr std::int64_t kChunk = 1 << 15;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  const std::size_t b = s.dim();
  std::int64_t hits = 0;

#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::vector<double> x(b);
    const std::int64_t end = std::min(samples, (c + 1) * kChunk);
    for (std::int64_t i = c * kChunk; i < end; ++i) {
      for (auto& v : x) v = rng.uniform();
      if (s.contains_unchecked(x.data(), eq_tol)) ++hits;
    }
  }

  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), samples};
}

}  // namespace sadisc
