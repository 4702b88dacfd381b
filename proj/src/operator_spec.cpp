#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sadisc/qdynamics.hpp"

namespace sadisc {

namespace {

bool close(cplx a, cplx b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument("operator spec: " + msg); }

}  // namespace

double minimal_envelope(const std::vector<KernelTerm>& kernel, double c1) {
  double c = 0.0;
  for (const auto& t : kernel) {
    c = std::max(c, std::abs(t.value) * std::exp(c1 * static_cast<double>(std::llabs(t.offset))));
  }
  return c > 0.0 ? c : 1.0;
}

void validate(const OperatorSpec& spec) {
  const std::size_t b = spec.alpha.dim();
  if (b == 0) reject("alpha must have dimension >= 1");
  if (spec.theta.dim() != b) reject("theta and alpha dimensions differ");
  for (double a : spec.alpha.coords) {
    if (!std::isfinite(a)) reject("non-finite alpha");
  }
  if (spec.L < 1) reject("window radius L must be >= 1");
  if (spec.cutoff < 0 || spec.cutoff > 2 * spec.L) reject("kernel cutoff must lie in [0, 2L]");
  if (!(spec.decay_C1 > 0.0) || !(spec.decay_c1 > 0.0)) reject("decay constants C1, c1 must be positive");
  if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda)) reject("coupling lambda must be finite and >= 0");

  std::map<std::int64_t, cplx> a;
  for (const auto& t : spec.kernel) {
    if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag())) reject("non-finite kernel value");
    if (std::llabs(t.offset) > spec.cutoff) reject("kernel offset " + std::to_string(t.offset) + " beyond the cutoff");
    if (!a.emplace(t.offset, t.value).second) reject("duplicate kernel offset " + std::to_string(t.offset));
    const double env = spec.decay_C1 * std::exp(-spec.decay_c1 * static_cast<double>(std::llabs(t.offset)));
    if (std::abs(t.value) > env * (1.0 + 1e-12)) {
      reject("|a_" + std::to_string(t.offset) + "| exceeds the decay envelope C1 exp(-c1 |k|)");
    }
  }
  for (const auto& [k, v] : a) {
    if (k == 0) {
      if (v.imag() != 0.0) reject("a_0 must be real");
      continue;
    }
    auto it = a.find(-k);
    if (it == a.end() || !close(it->second, std::conj(v))) {
      reject("kernel is not Hermitian at offset " + std::to_string(k));
    }
  }

  std::map<std::vector<std::int64_t>, cplx> c;
  for (const auto& h : spec.potential) {
    if (h.freq.size() != b) reject("harmonic frequency has the wrong dimension");
    if (!c.emplace(h.freq, h.coef).second) reject("duplicate harmonic");
  }
  for (const auto& [m, v] : c) {
    std::vector<std::int64_t> neg(m);
    for (auto& x : neg) x = -x;
    auto it = c.find(neg);
    if (it == c.end() || !close(it->second, std::conj(v))) reject("potential is not real-valued (missing conjugate harmonic)");
  }
}

OperatorSpec laplacian_spec(std::int64_t L) {
  OperatorSpec s;
  s.kernel = {{-1, cplx(1.0, 0.0)}, {1, cplx(1.0, 0.0)}};
  s.decay_C1 = std::numbers::e;
  s.decay_c1 = 1.0;
  s.cutoff = 1;
  s.lambda = 0.0;
  s.theta = TorusVector::zero(1);
  s.alpha = Frequency{{0.0}, "unused"};
  s.L = L;
  return s;
}

void add_hopping_pair(OperatorSpec& spec, std::int64_t k, cplx value) {
  if (k == 0) {
    spec.kernel.push_back({0, cplx(value.real(), 0.0)});
  } else {
    spec.kernel.push_back({k, value});
    spec.kernel.push_back({-k, std::conj(value)});
  }
  spec.cutoff = std::max<std::int64_t>(spec.cutoff, std::llabs(k));
}

void add_harmonic_pair(OperatorSpec& spec, std::vector<std::int64_t> freq, cplx coef) {
  if (std::all_of(freq.begin(), freq.end(), [](std::int64_t m) { return m == 0; })) {
    spec.potential.push_back({std::move(freq), cplx(coef.real(), 0.0)});
    return;
  }
  std::vector<std::int64_t> neg(freq);
  for (auto& x : neg) x = -x;
  spec.potential.push_back({std::move(freq), coef});
  spec.potential.push_back({std::move(neg), std::conj(coef)});
}

double evaluate_potential(const OperatorSpec& spec, std::span<const double> x) {
  double v = 0.0;
  for (const auto& h : spec.potential) {
    const double phase = 2.0 * std::numbers::pi * frac_of_dot(h.freq, x);
    v += h.coef.real() * std::cos(phase) - h.coef.imag() * std::sin(phase);
  }
  return v;
}

double spectral_bound(const OperatorSpec& spec) {
  double a = 0.0;
  for (const auto& t : spec.kernel) {
    if (t.offset >= 0) a += std::abs(t.value);
  }
  double c = 0.0;
  for (const auto& h : spec.potential) c += std::abs(h.coef);
  return 2.0 * a + spec.lambda * c + 1.0;
}

TorusVector shifted_phase(const TorusVector& theta, const Frequency& alpha, std::int64_t n) {
  if (theta.dim() != alpha.dim()) throw std::invalid_argument("shifted_phase: dimension mismatch");
  if (std::llabs(n) > kOrbitIndexBudget) throw std::out_of_range("shifted_phase: |n| beyond 2^40");
  std::vector<double> out(alpha.dim());
  orbit_point_into(theta.coords(), alpha.coords, n, out);
  return TorusVector(std::move(out));
}

bool Hamiltonian::is_real() const noexcept {
  return std::all_of(band.begin(), band.end(), [](cplx v) { return v.imag() == 0.0; });
}

cplx Hamiltonian::entry(std::int64_t n, std::int64_t m) const noexcept {
  if (n == m) return diag[static_cast<std::size_t>(n + L)];
  const std::int64_t k = n - m;
  const auto ak = static_cast<std::size_t>(std::llabs(k));
  if (ak > band.size()) return 0.0;
  return k > 0 ? band[ak - 1] : std::conj(band[ak - 1]);
}

Eigen::MatrixXcd Hamiltonian::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = diag[static_cast<std::size_t>(i)];
    for (std::size_t k = 1; k <= band.size() && i + static_cast<Eigen::Index>(k) < n; ++k) {
      const auto j = i + static_cast<Eigen::Index>(k);
      h(j, i) = band[k - 1];
      h(i, j) = std::conj(band[k - 1]);
    }
  }
  return h;
}

std::vector<cplx> Hamiltonian::apply(const std::vector<cplx>& psi) const {
  const std::size_t n = size();
  if (psi.size() != n) throw std::invalid_argument("Hamiltonian::apply: state has the wrong length");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = diag[i] * psi[i];
    for (std::size_t k = 1; k <= band.size(); ++k) {
      if (i >= k) s += band[k - 1] * psi[i - k];
      if (i + k < n) s += std::conj(band[k - 1]) * psi[i + k];
    }
    out[i] = s;
  }
  return out;
}

Hamiltonian build_hamiltonian(const OperatorSpec& spec) {
  validate(spec);
  Hamiltonian h;
  h.L = spec.L;
  const std::size_t n = static_cast<std::size_t>(2 * spec.L + 1);
  double a0 = 0.0;
  std::int64_t width = 0;
  for (const auto& t : spec.kernel) {
    if (t.offset == 0) a0 = t.value.real();
    if (t.value != cplx(0.0, 0.0)) width = std::max<std::int64_t>(width, std::llabs(t.offset));
  }
  h.band.assign(static_cast<std::size_t>(width), cplx(0.0, 0.0));
  for (const auto& t : spec.kernel) {
    if (t.offset > 0 && t.offset <= width) h.band[static_cast<std::size_t>(t.offset - 1)] = t.value;
  }
  h.diag.resize(n);
  const std::size_t b = spec.alpha.dim();
#pragma omp parallel
  {
    std::vector<double> x(b);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t site = static_cast<std::int64_t>(i) - spec.L;
      orbit_point_into(spec.theta.coords(), spec.alpha.coords, site, x);
      h.diag[i] = a0 + spec.lambda * evaluate_potential(spec, x);
    }
  }
  return h;
}

std::vector<cplx> window_state(const InitialState& s, std::int64_t L) {
  std::vector<cplx> psi(static_cast<std::size_t>(2 * L + 1), cplx(0.0, 0.0));
  double norm2 = 0.0;
  for (const auto& [site, amp] : s) {
    if (std::llabs(site) > L) throw std::invalid_argument("initial state leaves the window [-L, L]");
    psi[static_cast<std::size_t>(site + L)] += amp;
  }
  for (const auto& v : psi) norm2 += std::norm(v);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw std::invalid_argument("initial state must have unit norm");
  return psi;
}

double moments(const std::vector<cplx>& psi, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("moments: p must be > 0");
  if (psi.size() % 2 == 0) throw std::invalid_argument("moments: state length must be 2L+1");
  const auto L = static_cast<std::int64_t>(psi.size() / 2);
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double n = static_cast<double>(std::llabs(static_cast<std::int64_t>(i) - L));
    if (n != 0.0) s += std::pow(n, p) * std::norm(psi[i]);
  }
  return s;
}

double energy(const Hamiltonian& h, const std::vector<cplx>& psi) {
  const auto hp = h.apply(psi);
  cplx s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * hp[i];
  return s.real();
}

LDTParams default_ldt_params(const OperatorSpec& spec) {
  LDTParams p;
  p.c2 = 0.5 * spec.decay_c1;
  return p;
}

void validate(const LDTParams& p) {
  if (!(p.sigma1 > 0.0 && p.sigma1 < 1.0)) throw std::invalid_argument("LDT params: sigma1 must lie in (0,1)");
  if (!(p.c2 > 0.0)) throw std::invalid_argument("LDT params: c2 must be > 0");
  if (!(p.eps0 > 0.0)) throw std::invalid_argument("LDT params: eps0 must be > 0");
}

}  // namespace sadisc
