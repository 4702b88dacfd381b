#pragma once

// Finite-volume simulation of the long-range quasi-periodic operator
//   (H psi)(n) = sum_m a_{n-m} psi(m) + lambda V(theta + n alpha) psi(n)
// on the window [-L, L]: assembly, exact propagation through an eigendecomposition,
// position moments, restricted Green's functions, LDT checks and bad-set counts.

#include <complex>
#include <span>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sadisc/torus.hpp"

namespace sadisc {

using cplx = std::complex<double>;

struct KernelTerm {
  std::int64_t offset = 0;
  cplx value;
};

struct Harmonic {
  std::vector<std::int64_t> freq;
  cplx coef;
};

struct OperatorSpec {
  /// Hopping values a_k; every nonzero offset k must come with -k and conj(a_k).
  std::vector<KernelTerm> kernel;
  double decay_C1 = 1.0;
  double decay_c1 = 1.0;
  std::int64_t cutoff = 0;  // largest |k| allowed in the kernel
  double lambda = 0.0;
  /// V(x) = sum coef * exp(2 pi i <freq, x>), closed under (m, c) -> (-m, conj c).
  std::vector<Harmonic> potential;
  TorusVector theta;
  Frequency alpha;
  std::int64_t L = 0;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const OperatorSpec& spec);

/// Nearest-neighbour kernel a_{+-1} = 1 with envelope C1 = e, c1 = 1.
OperatorSpec laplacian_spec(std::int64_t L);

/// Adds the pair (m, c), (-m, conj c); for m = 0 only the real part is kept.
void add_harmonic_pair(OperatorSpec& spec, std::vector<std::int64_t> freq, cplx coef);
/// Adds a_k and a_{-k} = conj(a_k); k = 0 sets the real on-site term.
void add_hopping_pair(OperatorSpec& spec, std::int64_t k, cplx value);

/// Smallest C1 with |a_k| <= C1 exp(-c1 |k|) for the stored kernel.
double minimal_envelope(const std::vector<KernelTerm>& kernel, double c1);

double evaluate_potential(const OperatorSpec& spec, std::span<const double> x);

/// Crude bound K with sigma(H) in [-K, K]: 2 sum_{k>=0} |a_k| + lambda sum |c_m| + 1.
double spectral_bound(const OperatorSpec& spec);

/// Banded Toeplitz-plus-diagonal Hermitian matrix indexed by n in [-L, L].
struct Hamiltonian {
  std::int64_t L = 0;
  std::vector<double> diag;  // a_0 + lambda V(frac(theta + n alpha))
  std::vector<cplx> band;    // band[k-1] = a_k = H(n + k, n), k = 1..bandwidth
  std::size_t size() const noexcept { return diag.size(); }
  std::size_t bandwidth() const noexcept { return band.size(); }
  bool is_real() const noexcept;
  cplx entry(std::int64_t n, std::int64_t m) const noexcept;
  Eigen::MatrixXcd dense() const;
  std::vector<cplx> apply(const std::vector<cplx>& psi) const;
};

Hamiltonian build_hamiltonian(const OperatorSpec& spec);

inline constexpr double kEdgeMassLimit = 1e-8;
inline constexpr std::int64_t kEdgeBand = 10;
inline constexpr double kUnitarityTolerance = 1e-10;

struct EvolveResult {
  std::vector<cplx> psi;
  double norm = 0.0;
  double edge_mass = 0.0;  // sum over |n| > L - 10 of |psi(n)|^2
  bool valid = false;      // edge mass below 1e-8 and norm within 1e-10 of 1
};

/// Eigendecomposition of H computed once; evolve(psi0, t) = V exp(-i Lambda t) V* psi0.
/// Uses a tridiagonal solver for real nearest-neighbour kernels and a dense
/// Hermitian solver otherwise. BLAS runs single-threaded so results do not
/// depend on the thread count.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h);

  std::int64_t L() const noexcept { return L_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  EvolveResult evolve(const std::vector<cplx>& psi0, double t) const;

 private:
  std::int64_t L_ = 0;
  bool real_ = true;
  std::vector<double> eigenvalues_;
  Eigen::MatrixXd vr_;
  Eigen::MatrixXcd vc_;
};

/// One-shot convenience wrapper around Propagator.
EvolveResult evolve(const Hamiltonian& h, const std::vector<cplx>& psi0, double t);

/// Finitely supported initial state as (site, amplitude) pairs.
using InitialState = std::vector<std::pair<std::int64_t, cplx>>;

inline InitialState delta_state(std::int64_t site = 0) { return {{site, cplx(1.0, 0.0)}}; }

/// Window vector of length 2L+1. Throws unless the state lies in the window and has unit norm.
std::vector<cplx> window_state(const InitialState& s, std::int64_t L);

/// sum_n |n|^p |psi(n)|^2 over the window, psi indexed from -L.
double moments(const std::vector<cplx>& psi, double p);

double energy(const Hamiltonian& h, const std::vector<cplx>& psi);

struct MomentSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> edge_mass;
  std::vector<bool> valid;
  double p = 2.0;
  double spectral_bound = 0.0;
  bool all_valid() const;
};

MomentSeries moment_series(const OperatorSpec& spec, const InitialState& psi0, double p,
                           const std::vector<double>& t_grid);

struct MomentFit {
  double ballistic_slope = 0.0;  // d log<|X|^p> / d log T
  double loglog_exponent = 0.0;  // d log<|X|^p> / d log log T, over T > 1
  double ballistic_r_squared = 0.0;
  double loglog_r_squared = 0.0;
};

/// Throws std::runtime_error ("fit refused") if any point is flagged or non-positive.
MomentFit fit_moment_series(const MomentSeries& series);

MomentFit moment_growth_fit(const OperatorSpec& spec, const InitialState& psi0, double p,
                            const std::vector<double>& t_grid);

struct LDTParams {
  double sigma1 = 0.9;
  double c2 = 0.5;
  double sigma2 = 0.5;
  double eps0 = 0.1;
};

/// sigma1 = 0.9, c2 = c1/2, eps0 = 0.1.
LDTParams default_ldt_params(const OperatorSpec& spec);
void validate(const LDTParams& p);

inline constexpr double kMinGreenImaginaryPart = 1e-12;

struct GreenFunction {
  std::int64_t lo = 0;  // window [lo, hi]
  std::int64_t hi = 0;
  Eigen::MatrixXcd g;
  /// max_i 1/|mu_i - z| over the eigenvalues mu_i of the restriction, i.e. the
  /// operator norm; never exceeds 1/Im z.
  double norm = 0.0;
};

/// (R (H - z) R)^{-1} on [lo, hi] with phase theta, through the spectral
/// decomposition of the restricted Hermitian matrix. Rejects Im z < 1e-12.
GreenFunction green_function(const OperatorSpec& spec, const TorusVector& theta, std::int64_t lo, std::int64_t hi,
                             cplx z);
inline GreenFunction green_function(const OperatorSpec& spec, std::int64_t lo, std::int64_t hi, cplx z) {
  return green_function(spec, spec.theta, lo, hi, z);
}

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);

struct LDTCheck {
  bool norm_ok = false;
  bool decay_ok = false;
  bool ok() const noexcept { return norm_ok && decay_ok; }
};

/// G indexed by [-N, N]: norm_ok iff ||G|| <= exp(N^sigma1); decay_ok iff
/// |G(n,m)| <= exp(-c2 |n-m|) whenever |n-m| >= N/10.
LDTCheck ldt_check(const Eigen::MatrixXcd& g, std::int64_t N, const LDTParams& params);
LDTCheck ldt_check(const GreenFunction& g, std::int64_t N, const LDTParams& params);

/// Largest (2N+1)(2N1+1)^3 accepted by bad_set.
inline constexpr double kBadSetBudget = 2e10;

/// frac(theta + n alpha) for any integer n.
TorusVector shifted_phase(const TorusVector& theta, const Frequency& alpha, std::int64_t n);

/// Sites n in [-N, N] whose Green's function on [-N1, N1] at phase theta + n alpha fails ldt_check.
std::vector<std::int64_t> bad_set(const TorusVector& theta, const Frequency& alpha, cplx z, std::int64_t N,
                                  std::int64_t N1, const LDTParams& params, const OperatorSpec& spec);

/// Fraction of `samples` uniform phases whose window-N1 Green's function fails ldt_check.
double bad_phase_measure(const Frequency& alpha, cplx z, std::int64_t N1, const LDTParams& params,
                         const OperatorSpec& spec_template, std::int64_t samples, std::uint64_t seed);

}  // namespace sadisc
