#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sadisc/qdynamics.hpp"
#include "sadisc/rng.hpp"

namespace sadisc {

namespace {

template <typename Matrix>
Eigen::MatrixXcd spectral_inverse(const Matrix& m, cplx z, double& norm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("green_function: eigensolver failed");
  const auto& mu = es.eigenvalues();
  Eigen::VectorXcd d(mu.size());
  norm = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    // |mu - z| = hypot(mu - E, Im z) >= Im z, so each 1/|mu - z| is at most 1/Im z.
    const double dist = std::hypot(mu(i) - z.real(), z.imag());
    norm = std::max(norm, 1.0 / dist);
    d(i) = 1.0 / (cplx(mu(i), 0.0) - z);
  }
  const Eigen::MatrixXcd u = es.eigenvectors().template cast<cplx>();
  return u * d.asDiagonal() * u.adjoint();
}

}  // namespace

GreenFunction green_function(const OperatorSpec& spec, const TorusVector& theta, std::int64_t lo, std::int64_t hi,
                             cplx z) {
  if (hi < lo) throw std::invalid_argument("green_function: empty window");
  if (!(z.imag() >= kMinGreenImaginaryPart)) {
    throw std::invalid_argument("green_function: Im z must be >= 1e-12 (restriction is singular to working precision)");
  }
  if (theta.dim() != spec.alpha.dim()) throw std::invalid_argument("green_function: theta has the wrong dimension");

  std::map<std::int64_t, cplx> a;
  bool real = true;
  for (const auto& t : spec.kernel) {
    a[t.offset] = t.value;
    real = real && t.value.imag() == 0.0;
  }
  const auto m = static_cast<Eigen::Index>(hi - lo + 1);
  std::vector<double> x(spec.alpha.dim());
  Eigen::VectorXd diag(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    orbit_point_into(theta.coords(), spec.alpha.coords, lo + i, x);
    diag(i) = spec.lambda * evaluate_potential(spec, x);
  }

  GreenFunction g;
  g.lo = lo;
  g.hi = hi;
  if (real) {
    Eigen::MatrixXd h = diag.asDiagonal();
    for (const auto& [k, v] : a) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index j = i - k;
        if (j >= 0 && j < m) h(i, j) += v.real();
      }
    }
    g.g = spectral_inverse(h, z, g.norm);
  } else {
    Eigen::MatrixXcd h = diag.cast<cplx>().asDiagonal();
    for (const auto& [k, v] : a) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index j = i - k;
        if (j >= 0 && j < m) h(i, j) += v;
      }
    }
    g.g = spectral_inverse(h, z, g.norm);
  }
  return g;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

namespace {

LDTCheck ldt_check_with_norm(const Eigen::MatrixXcd& g, double norm, std::int64_t N, const LDTParams& params) {
  validate(params);
  if (N < 0 || g.rows() != 2 * N + 1 || g.cols() != 2 * N + 1) {
    throw std::invalid_argument("ldt_check: G must be indexed by [-N, N]");
  }
  LDTCheck c;
  c.norm_ok = norm <= std::exp(std::pow(static_cast<double>(N), params.sigma1));
  c.decay_ok = true;
  for (Eigen::Index i = 0; i < g.rows() && c.decay_ok; ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const auto d = std::llabs(static_cast<std::int64_t>(i - j));
      if (10 * d < N) continue;
      if (std::abs(g(i, j)) > std::exp(-params.c2 * static_cast<double>(d))) {
        c.decay_ok = false;
        break;
      }
    }
  }
  return c;
}

}  // namespace

LDTCheck ldt_check(const Eigen::MatrixXcd& g, std::int64_t N, const LDTParams& params) {
  return ldt_check_with_norm(g, operator_norm(g), N, params);
}

LDTCheck ldt_check(const GreenFunction& g, std::int64_t N, const LDTParams& params) {
  return ldt_check_with_norm(g.g, g.norm, N, params);
}

std::vector<std::int64_t> bad_set(const TorusVector& theta, const Frequency& alpha, cplx z, std::int64_t N,
                                  std::int64_t N1, const LDTParams& params, const OperatorSpec& spec) {
  validate(params);
  validate(spec);
  if (N1 < 0 || N1 > N) throw std::invalid_argument("bad_set: need 0 <= N1 <= N");
  if (!(z.imag() >= kMinGreenImaginaryPart)) throw std::invalid_argument("bad_set: Im z must be >= 1e-12");
  if (theta.dim() != alpha.dim()) throw std::invalid_argument("bad_set: theta and alpha dimensions differ");
  const double w = 2.0 * static_cast<double>(N1) + 1.0;
  const double cost = (2.0 * static_cast<double>(N) + 1.0) * w * w * w;
  if (cost > kBadSetBudget) {
    std::ostringstream os;
    os << "bad_set: estimated cost " << cost << " exceeds the budget of " << kBadSetBudget;
    throw std::length_error(os.str());
  }
  OperatorSpec local = spec;
  local.alpha = alpha;

  const std::int64_t count = 2 * N + 1;
  std::vector<char> bad(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i) {
    const TorusVector phase = shifted_phase(theta, alpha, i - N);
    const GreenFunction g = green_function(local, phase, -N1, N1, z);
    bad[static_cast<std::size_t>(i)] = ldt_check(g, N1, params).ok() ? 0 : 1;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < count; ++i) {
    if (bad[static_cast<std::size_t>(i)]) out.push_back(i - N);
  }
  return out;
}

double bad_phase_measure(const Frequency& alpha, cplx z, std::int64_t N1, const LDTParams& params,
                         const OperatorSpec& spec_template, std::int64_t samples, std::uint64_t seed) {
  validate(params);
  if (samples < 1) throw std::invalid_argument("bad_phase_measure: samples must be >= 1");
  if (N1 < 0) throw std::invalid_argument("bad_phase_measure: N1 must be >= 0");
  if (!(z.imag() >= kMinGreenImaginaryPart)) throw std::invalid_argument("bad_phase_measure: Im z must be >= 1e-12");
  OperatorSpec local = spec_template;
  local.alpha = alpha;
  local.theta = TorusVector::zero(alpha.dim());
  validate(local);

  const std::size_t b = alpha.dim();
  std::int64_t failures = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : failures)
  for (std::int64_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<double> th(b);
    for (double& v : th) v = rng.uniform();
    const GreenFunction g = green_function(local, TorusVector(th), -N1, N1, z);
    if (!ldt_check(g, N1, params).ok()) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(samples);
}

}  // namespace sadisc
