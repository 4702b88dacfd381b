#include <cmath>
#include <complex>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "sadisc/fit.hpp"
#include "sadisc/qdynamics.hpp"

extern "C" void openblas_set_num_threads(int);

namespace sadisc {

Propagator::Propagator(const Hamiltonian& h) : L_(h.L), real_(h.is_real()) {
  openblas_set_num_threads(1);
  const auto n = static_cast<lapack_int>(h.size());
  eigenvalues_.assign(static_cast<std::size_t>(n), 0.0);

  if (real_ && h.bandwidth() <= 1) {
    std::vector<double> d = h.diag;
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    if (h.bandwidth() == 1) {
      for (lapack_int i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = h.band[0].real();
    }
    vr_.resize(n, n);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
    lapack_int m = 0;
    lapack_logical tryrac = 1;
    const lapack_int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, &m,
                                           eigenvalues_.data(), vr_.data(), n, n, isuppz.data(), &tryrac);
    if (info != 0 || m != n) throw std::runtime_error("Propagator: tridiagonal eigensolver failed");
  } else if (real_) {
    vr_ = h.dense().real();
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vr_.data(), n, eigenvalues_.data());
    if (info != 0) throw std::runtime_error("Propagator: symmetric eigensolver failed");
  } else {
    vc_ = h.dense();
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, vc_.data(), n, eigenvalues_.data());
    if (info != 0) throw std::runtime_error("Propagator: Hermitian eigensolver failed");
  }
}

EvolveResult Propagator::evolve(const std::vector<cplx>& psi0, double t) const {
  const auto n = static_cast<Eigen::Index>(eigenvalues_.size());
  if (static_cast<Eigen::Index>(psi0.size()) != n) throw std::invalid_argument("evolve: state has the wrong length");
  if (!std::isfinite(t)) throw std::invalid_argument("evolve: t must be finite");

  EvolveResult r;
  if (t == 0.0) {
    r.psi = psi0;
  } else {
    const Eigen::Map<const Eigen::VectorXcd> p(psi0.data(), n);
    r.psi.resize(static_cast<std::size_t>(n));
    Eigen::Map<Eigen::VectorXcd> out(r.psi.data(), n);
    auto phases = [&](Eigen::VectorXcd& c) {
      for (Eigen::Index k = 0; k < n; ++k) c(k) *= std::polar(1.0, -eigenvalues_[static_cast<std::size_t>(k)] * t);
    };
    if (real_) {
      const Eigen::VectorXd re = vr_.transpose() * p.real();
      const Eigen::VectorXd im = vr_.transpose() * p.imag();
      Eigen::VectorXcd c(n);
      c.real() = re;
      c.imag() = im;
      phases(c);
      const Eigen::VectorXd ore = vr_ * c.real();
      const Eigen::VectorXd oim = vr_ * c.imag();
      out.real() = ore;
      out.imag() = oim;
    } else {
      Eigen::VectorXcd c = vc_.adjoint() * p;
      phases(c);
      out = vc_ * c;
    }
  }

  double total = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < r.psi.size(); ++i) {
    const double w = std::norm(r.psi[i]);
    total += w;
    if (std::llabs(static_cast<std::int64_t>(i) - L_) > L_ - kEdgeBand) edge += w;
  }
  r.norm = std::sqrt(total);
  r.edge_mass = edge;
  r.valid = edge < kEdgeMassLimit && std::abs(r.norm - 1.0) <= kUnitarityTolerance;
  return r;
}

EvolveResult evolve(const Hamiltonian& h, const std::vector<cplx>& psi0, double t) {
  return Propagator(h).evolve(psi0, t);
}

bool MomentSeries::all_valid() const {
  for (bool v : valid) {
    if (!v) return false;
  }
  return true;
}

MomentSeries moment_series(const OperatorSpec& spec, const InitialState& psi0, double p,
                           const std::vector<double>& t_grid) {
  if (!(p > 0.0)) throw std::invalid_argument("moment_series: p must be > 0");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw std::invalid_argument("moment_series: T grid must be nonnegative and increasing");
    }
  }
  const Hamiltonian h = build_hamiltonian(spec);
  const auto psi = window_state(psi0, spec.L);
  const Propagator prop(h);
  MomentSeries s;
  s.p = p;
  s.spectral_bound = spectral_bound(spec);
  for (double t : t_grid) {
    const EvolveResult r = prop.evolve(psi, t);
    s.times.push_back(t);
    s.values.push_back(moments(r.psi, p));
    s.edge_mass.push_back(r.edge_mass);
    s.valid.push_back(r.valid);
  }
  return s;
}

MomentFit fit_moment_series(const MomentSeries& series) {
  std::vector<double> lt, llt, lv, llv;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t <= 0.0) continue;
    if (!series.valid[i]) {
      throw std::runtime_error("fit refused: evolution at t=" + std::to_string(t) +
                               " is flagged (edge mass " + std::to_string(series.edge_mass[i]) + ")");
    }
    if (!(series.values[i] > 0.0)) throw std::runtime_error("fit refused: non-positive moment at t=" + std::to_string(t));
    lt.push_back(std::log(t));
    lv.push_back(std::log(series.values[i]));
    if (t > 1.0) {
      llt.push_back(std::log(std::log(t)));
      llv.push_back(lv.back());
    }
  }
  if (lt.size() < 2) throw std::runtime_error("fit refused: need at least two positive times");
  MomentFit f;
  const LinearFit b = least_squares(lt, lv);
  f.ballistic_slope = b.slope;
  f.ballistic_r_squared = b.r_squared;
  if (llt.size() >= 2) {
    const LinearFit g = least_squares(llt, llv);
    f.loglog_exponent = g.slope;
    f.loglog_r_squared = g.r_squared;
  } else {
    f.loglog_exponent = std::nan("");
    f.loglog_r_squared = std::nan("");
  }
  return f;
}

MomentFit moment_growth_fit(const OperatorSpec& spec, const InitialState& psi0, double p,
                            const std::vector<double>& t_grid) {
  return fit_moment_series(moment_series(spec, psi0, p, t_grid));
}

}  // namespace sadisc
