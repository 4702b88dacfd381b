#pragma once

// Semi-algebraic subsets of [0,1]^b in union-of-intersections form, with
// membership, degree accounting, Monte Carlo measure and grid-cover counting.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sadisc/polynomial.hpp"
#include "sadisc/torus.hpp"

namespace sadisc {

enum class Relation { GreaterEq, LessEq, Equal };

std::string_view relation_symbol(Relation r) noexcept;

struct SignCondition {
  std::size_t poly_index = 0;
  Relation relation = Relation::GreaterEq;
};

using Clause = std::vector<SignCondition>;

/// S = union_j intersection_{l in clause j} { P_l(x) rel 0 }.
class SemiAlgebraicSet {
 public:
  SemiAlgebraicSet() = default;
  /// Throws std::invalid_argument if a condition addresses a missing polynomial,
  /// a polynomial has the wrong arity, or declared_degree < s*d.
  SemiAlgebraicSet(std::size_t dim, std::vector<Polynomial> polys, std::vector<Clause> clauses,
                   std::optional<int> declared_degree = std::nullopt);

  static SemiAlgebraicSet full_cube(std::size_t dim);
  static SemiAlgebraicSet empty(std::size_t dim);
  /// { x in [0,1]^b : <x, normal> = offset }, written with 2b+1 affine conditions.
  static SemiAlgebraicSet hyperplane_in_cube(std::span<const double> normal, double offset = 0.0);
  /// prod_i [lo_i, hi_i] as 2b affine conditions.
  static SemiAlgebraicSet box(std::span<const double> lo, std::span<const double> hi);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Polynomial>& polys() const noexcept { return polys_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  std::optional<int> declared_degree() const noexcept { return declared_; }

  /// s*d of the stored representation.
  int degree() const noexcept;

  /// ">=" and "<=" are exact sign tests; "=" is |P(x)| <= eq_tol.
  bool contains(std::span<const double> x, double eq_tol = 0.0) const;
  bool contains(const TorusVector& x, double eq_tol = 0.0) const { return contains(x.coords(), eq_tol); }
  bool contains_unchecked(const double* x, double eq_tol) const noexcept;

  bool clause_is_affine(std::size_t clause) const noexcept;

 private:
  std::size_t dim_ = 0;
  std::vector<Polynomial> polys_;
  std::vector<Clause> clauses_;
  std::optional<int> declared_;
};

/// Union as clause concatenation; the polynomial families are appended.
SemiAlgebraicSet unite(const SemiAlgebraicSet& a, const SemiAlgebraicSet& b);

int degree(const SemiAlgebraicSet& s) noexcept;

struct MeasureEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Uniform-sampling estimate of Leb(S ∩ [0,1]^b) with binomial standard error.
/// Deterministic for a given seed regardless of the thread count.
MeasureEstimate measure_estimate(const SemiAlgebraicSet& s, std::int64_t samples, std::uint64_t seed,
                                 double eq_tol = 0.0);

struct CoverReport {
  double epsilon = 0.0;
  std::int64_t cell_count = 0;
  std::int64_t grid_side = 0;
};

inline constexpr int kDefaultProbeDensity = 4;

/// Counts the cells of the uniform grid with grid_side = ceil(1/epsilon) cells per
/// axis (cells [i h, (i+1) h), h = 1/grid_side) that meet S. A cell meets S if one of
/// its probe_density^b probe points lies in S, or if some all-affine clause
/// intersects the cell (decided exactly by Fourier-Motzkin elimination).
/// Subtrees whose interval enclosure rules out every clause are pruned.
CoverReport grid_cover_count(const SemiAlgebraicSet& s, double epsilon, int probe_density = kDefaultProbeDensity,
                             double eq_tol = 0.0);

/// Exact test: does the half-open box [lo, hi) meet the all-affine clause?
bool affine_clause_meets_box(const SemiAlgebraicSet& s, std::size_t clause, std::span<const double> lo,
                             std::span<const double> hi, double eq_tol);

}  // namespace sadisc
