#pragma once

// Constructive hyperplane lower bound: b-1 short, angularly independent orbit
// vectors {n_i alpha}, the hyperplane they span through the origin, and an
// exhaustive enumeration of the lattice combinations sum k_i {n_i alpha} that
// the orbit is guaranteed to visit on that hyperplane.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sadisc/torus.hpp"

namespace sadisc {

struct HyperplaneWitness {
  std::vector<std::int64_t> n_list;
  std::vector<std::vector<double>> spanning;  // {n_i alpha}
  std::vector<double> normal;                 // unit, first nonzero coordinate positive
  std::int64_t N = 0;                         // scale the vectors were built for
  double epsilon = 0.0;
  double delta = 0.0;                         // smallest angular margin achieved (1 for b = 2)
  /// N^{-1/b} - sqrt(b) N^{-(1+eps)/b} > 0, the regime where the window alone
  /// guarantees the angular margin. Outside it the margin is checked directly.
  bool in_asymptotic_regime = false;
};

/// Thrown by choose_target_w when no sampled direction reaches delta_min.
class TargetNotFound : public std::runtime_error {
 public:
  TargetNotFound(const std::string& what, double best) : std::runtime_error(what), best_delta(best) {}
  double best_delta;
};

struct TargetChoice {
  std::vector<double> w;
  double delta = 1.0;  // subspace_angular_dist(w, spanning); 1 for the base step
};

inline constexpr int kDefaultTargetSamples = 10000;

/// w in [0,1]^b with ||w||_2 = N^{-1/b}/2, the best of `samples` seeded candidate
/// nonnegative directions (uniform orthant draws and clipped projections onto
/// the orthogonal complement of the spanning set).
TargetChoice choose_target_w(const std::vector<std::vector<double>>& spanning_so_far, std::size_t b,
                             std::int64_t N, double delta_min, int samples, std::uint64_t seed);

/// ceil(N^{1+2 eps}), the last index searched for a window hit.
std::int64_t window_search_limit(std::int64_t N, double epsilon);

/// N^{-(1+eps)/b}.
double window_half_width(std::int64_t N, double epsilon, std::size_t b);

/// Smallest n in [first, window_search_limit(N, eps)] with frac(n alpha) in
/// prod_j [w_j - h, w_j + h] ∩ [0,1], h = window_half_width.
std::optional<std::int64_t> search_window(const Frequency& alpha, std::int64_t N, double epsilon,
                                          const std::vector<double>& w, std::int64_t first = 1);

struct ConstructionFailure {
  std::size_t step = 0;  // 1-based induction step
  std::vector<double> window_center;
  double half_width = 0.0;
  std::int64_t search_limit = 0;
  std::string message;
};

struct ConstructionOptions {
  int target_samples = kDefaultTargetSamples;
  int retries = 3;  // w draws per induction step
};

struct ConstructionOutcome {
  std::optional<HyperplaneWitness> witness;
  std::optional<ConstructionFailure> failure;
  bool ok() const noexcept { return witness.has_value(); }
};

/// Inductive construction of n_1..n_{b-1} at scale N. Throws std::invalid_argument
/// for b < 2 ("b >= 2 required") or parameters out of range.
ConstructionOutcome construct_independent_vectors(const Frequency& alpha, std::int64_t N, double epsilon,
                                                  double delta_min, std::uint64_t seed,
                                                  const ConstructionOptions& opts = {});

/// Unit vector spanning the orthogonal complement of b-1 vectors in R^b. Throws
/// std::invalid_argument when the rank (pivot tolerance 1e-10 after row scaling)
/// is not b-1.
std::vector<double> assemble_normal(const std::vector<std::vector<double>>& spanning);

struct WitnessCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Range, norm, rank and orthogonality invariants of a witness against alpha.
WitnessCheck verify_witness(const HyperplaneWitness& w, const Frequency& alpha, double orth_tol = 1e-9);

struct LatticeHit {
  std::vector<std::int64_t> k;
  std::int64_t n = 0;
  std::vector<double> point;  // sum_i k_i {n_i alpha}
  double plane_residual = 0.0;
  double orbit_error = 0.0;   // sup-distance to frac(n alpha)
};

struct LatticeHitCertificate {
  std::vector<LatticeHit> hits;  // sorted by n, duplicates removed
  std::int64_t count = 0;
  double bound = 0.0;            // N^{(b-1)/(b+1) - eps}
  double product_bound = 0.0;    // prod_i min{N^{1-r(1+2eps)}/b, N^{r/b}/b}, r = b/(b+1)
  std::vector<std::int64_t> k_limits;
  bool exhaustive = true;
  double max_plane_residual = 0.0;
  double max_orbit_error = 0.0;
  bool checks_ok = true;         // every hit within 1e-9 of plane and orbit, k-constraints hold
};

inline constexpr std::int64_t kLatticeEnumerationBudget = 20'000'000;

/// #{k >= 1 : b k n <= N and k ||u||_inf < 1/b}.
std::int64_t admissible_k_limit(std::int64_t n, double u_sup, std::int64_t N, std::size_t b);

/// Enumerates all admissible k-tuples for the count horizon N. A tuple grid larger
/// than `budget` is truncated and flagged non-exhaustive.
LatticeHitCertificate enumerate_lattice_hits(const HyperplaneWitness& witness, const Frequency& alpha,
                                             std::int64_t N, std::int64_t budget = kLatticeEnumerationBudget);

/// #{1 <= n <= N : |<frac(theta + n alpha), normal> - offset| <= tol}.
std::int64_t count_hyperplane_hits(const Frequency& alpha, std::int64_t N, const std::vector<double>& normal,
                                   double tol, double offset = 0.0);

inline constexpr double kDefaultPlaneTolerance = 1e-9;

/// The two-scale pipeline: witness built at M = round(N^{b/(b+1)}), certificate
/// and plane count over 1..N.
struct LowerBoundRun {
  std::int64_t N = 0;
  std::int64_t witness_scale = 0;
  ConstructionOutcome construction;
  std::optional<WitnessCheck> witness_check;
  std::optional<LatticeHitCertificate> certificate;
  std::int64_t plane_count = 0;
  double plane_tol = kDefaultPlaneTolerance;
  bool success = false;  // construction ok, invariants hold, certificate checks ok, count >= bound
};

std::int64_t witness_scale_for(std::int64_t N, std::size_t b);

LowerBoundRun run_lower_bound(const Frequency& alpha, std::int64_t N, double epsilon, double delta_min,
                              std::uint64_t seed, const ConstructionOptions& opts = {},
                              double plane_tol = kDefaultPlaneTolerance);

/// Planes through the origin built by the two-scale construction for each N of a
/// grid (seed split per grid index). Grid points whose construction fails are
/// skipped and listed in `failed`.
struct HyperplaneFamily {
  std::vector<std::int64_t> built_for;
  std::vector<std::vector<double>> normals;
  std::vector<std::int64_t> failed;
};

HyperplaneFamily build_hyperplane_family(const Frequency& alpha, const std::vector<std::int64_t>& n_grid,
                                         double epsilon, double delta_min, std::uint64_t seed,
                                         const ConstructionOptions& opts = {});

struct FamilyCount {
  std::int64_t count = 0;
  std::size_t best_plane = 0;  // first plane attaining the maximum
};

/// max over the family of count_hyperplane_hits(alpha, N, normal, tol).
FamilyCount count_family_hits(const Frequency& alpha, std::int64_t N, const HyperplaneFamily& family, double tol);

}  // namespace sadisc
