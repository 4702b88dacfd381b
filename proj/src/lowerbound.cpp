#include "sadisc/lowerbound.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sadisc/discrepancy.hpp"
#include "sadisc/rng.hpp"
#include "sadisc/semialgebraic.hpp"

namespace sadisc {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double sup_norm(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// Orthonormal basis of span(vs) by modified Gram-Schmidt with reorthogonalization.
std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& vs) {
  std::vector<std::vector<double>> q;
  for (const auto& v : vs) {
    std::vector<double> u = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) {
        const double c = dot(u, e);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= c * e[i];
      }
    }
    const double n = norm2(u);
    if (n == 0.0) throw std::invalid_argument("orthonormalize: dependent vectors");
    for (double& x : u) x /= n;
    q.push_back(std::move(u));
  }
  return q;
}

void project_out(std::vector<double>& x, const std::vector<std::vector<double>>& q) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : q) {
      const double c = dot(x, e);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * e[i];
    }
  }
}

void check_alpha(const Frequency& alpha) {
  for (double a : alpha.coords) {
    if (!std::isfinite(a)) throw std::domain_error("non-finite frequency coordinate");
  }
}

}  // namespace

TargetChoice choose_target_w(const std::vector<std::vector<double>>& spanning_so_far, std::size_t b,
                             std::int64_t N, double delta_min, int samples, std::uint64_t seed) {
  if (b < 1) throw std::invalid_argument("choose_target_w: b must be >= 1");
  if (N < 1) throw std::invalid_argument("choose_target_w: N must be >= 1");
  if (!(delta_min > 0.0 && delta_min < 1.0)) throw std::invalid_argument("choose_target_w: delta_min must lie in (0,1)");
  if (samples < 1) throw std::invalid_argument("choose_target_w: samples must be >= 1");
  if (!spanning_so_far.empty() && spanning_so_far.size() + 1 >= b) {
    throw std::invalid_argument("choose_target_w: spanning set already has b-1 vectors");
  }
  for (const auto& v : spanning_so_far) {
    if (v.size() != b) throw std::invalid_argument("choose_target_w: spanning vector of wrong dimension");
  }

  const double radius = 0.5 * std::pow(static_cast<double>(N), -1.0 / static_cast<double>(b));
  Rng rng(seed);
  auto finish = [&](std::vector<double> d, double delta) {
    const double n = norm2(d);
    for (double& x : d) x *= radius / n;
    return TargetChoice{std::move(d), delta};
  };

  if (spanning_so_far.empty()) {
    std::vector<double> d(b, 0.0);
    while (norm2(d) == 0.0) {
      for (double& x : d) x = std::abs(rng.normal());
    }
    return finish(std::move(d), 1.0);
  }

  const auto q = orthonormalize(spanning_so_far);
  std::vector<double> best;
  double best_delta = -1.0;
  std::vector<double> d(b);
  for (int s = 0; s < samples; ++s) {
    for (double& x : d) x = rng.normal();
    if (s % 2 == 0) {
      for (double& x : d) x = std::abs(x);
    } else {
      project_out(d, q);
      for (double& x : d) x = std::max(x, 0.0);
    }
    if (norm2(d) == 0.0) continue;
    const double delta = subspace_angular_dist(d, spanning_so_far);
    if (delta > best_delta) {
      best_delta = delta;
      best = d;
    }
  }
  if (best_delta < delta_min) {
    std::ostringstream os;
    os << "choose_target_w: best sampled angular distance " << best_delta << " is below delta_min " << delta_min;
    throw TargetNotFound(os.str(), std::max(best_delta, 0.0));
  }
  return finish(std::move(best), best_delta);
}

std::int64_t window_search_limit(std::int64_t N, double epsilon) {
  const double x = std::pow(static_cast<double>(N), 1.0 + 2.0 * epsilon);
  if (!(x <= static_cast<double>(kOrbitIndexBudget))) throw std::out_of_range("window search limit beyond 2^40");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-14))));
}

double window_half_width(std::int64_t N, double epsilon, std::size_t b) {
  return std::pow(static_cast<double>(N), -(1.0 + epsilon) / static_cast<double>(b));
}

std::optional<std::int64_t> search_window(const Frequency& alpha, std::int64_t N, double epsilon,
                                          const std::vector<double>& w, std::int64_t first) {
  check_alpha(alpha);
  const std::size_t b = alpha.dim();
  if (w.size() != b) throw std::invalid_argument("search_window: w has the wrong dimension");
  for (double x : w) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("search_window: w must lie in [0,1]^b");
  }
  const std::int64_t last = window_search_limit(N, epsilon);
  const double h = window_half_width(N, epsilon, b);
  std::vector<double> lo(b), hi(b);
  for (std::size_t j = 0; j < b; ++j) {
    lo[j] = std::max(0.0, w[j] - h);
    hi[j] = std::min(1.0, w[j] + h);
  }
  first = std::max<std::int64_t>(first, 1);

  constexpr std::int64_t kChunk = 1 << 14;
  const std::int64_t per_round = 4 * static_cast<std::int64_t>(omp_get_max_threads());
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t start = first; start <= last; start += per_round * kChunk) {
    std::vector<std::int64_t> hit(static_cast<std::size_t>(per_round), kNone);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < per_round; ++c) {
      const std::int64_t a = start + c * kChunk;
      const std::int64_t z = std::min(last, a + kChunk - 1);
      for (std::int64_t n = a; n <= z; ++n) {
        bool in = true;
        for (std::size_t j = 0; j < b && in; ++j) {
          const double x = frac_of_multiple(n, alpha.coords[j]);
          in = x >= lo[j] && x <= hi[j];
        }
        if (in) {
          hit[static_cast<std::size_t>(c)] = n;
          break;
        }
      }
    }
    const std::int64_t m = *std::min_element(hit.begin(), hit.end());
    if (m != kNone) return m;
  }
  return std::nullopt;
}

std::vector<double> assemble_normal(const std::vector<std::vector<double>>& spanning) {
  if (spanning.empty()) throw std::invalid_argument("assemble_normal: need b-1 >= 1 vectors");
  const std::size_t m = spanning.size();
  const std::size_t b = m + 1;
  std::vector<std::vector<double>> a;
  for (const auto& v : spanning) {
    if (v.size() != b) throw std::invalid_argument("assemble_normal: expected b-1 vectors of length b");
    const double s = sup_norm(v);
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("assemble_normal: rank deficient (zero vector)");
    std::vector<double> r(v);
    for (double& x : r) x /= s;
    a.push_back(std::move(r));
  }

  // Full-pivot elimination to reduced row echelon form; col[] tracks the permutation.
  std::vector<std::size_t> col(b);
  std::iota(col.begin(), col.end(), std::size_t{0});
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pr = k, pc = k;
    double pv = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      for (std::size_t j = k; j < b; ++j) {
        if (std::abs(a[i][col[j]]) > pv) {
          pv = std::abs(a[i][col[j]]);
          pr = i;
          pc = j;
        }
      }
    }
    if (pv < 1e-10) throw std::invalid_argument("assemble_normal: spanning set is rank deficient");
    std::swap(a[k], a[pr]);
    std::swap(col[k], col[pc]);
    const double p = a[k][col[k]];
    for (double& x : a[k]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      const double f = a[i][col[k]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < b; ++j) a[i][j] -= f * a[k][j];
    }
  }
  const std::size_t free = col[m];
  std::vector<double> x(b, 0.0);
  x[free] = 1.0;
  for (std::size_t k = 0; k < m; ++k) x[col[k]] = -a[k][free];

  project_out(x, orthonormalize(spanning));
  const double n = norm2(x);
  for (double& v : x) v /= n;
  for (double v : x) {
    if (std::abs(v) > 1e-12) {
      if (v < 0.0) {
        for (double& y : x) y = -y;
      }
      break;
    }
  }
  return x;
}

ConstructionOutcome construct_independent_vectors(const Frequency& alpha, std::int64_t N, double epsilon,
                                                  double delta_min, std::uint64_t seed,
                                                  const ConstructionOptions& opts) {
  check_alpha(alpha);
  const std::size_t b = alpha.dim();
  if (b < 2) throw std::invalid_argument("construct_independent_vectors: b >= 2 required");
  if (N < 2) throw std::invalid_argument("construct_independent_vectors: N must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("construct_independent_vectors: epsilon must lie in (0,1)");
  if (!(delta_min > 0.0 && delta_min < 1.0)) {
    throw std::invalid_argument("construct_independent_vectors: delta_min must lie in (0,1)");
  }
  if (opts.retries < 1) throw std::invalid_argument("construct_independent_vectors: retries must be >= 1");

  const double bd = static_cast<double>(b);
  const double norm_cap = std::pow(static_cast<double>(N), -1.0 / bd);
  const double h = window_half_width(N, epsilon, b);
  const std::int64_t limit = window_search_limit(N, epsilon);

  HyperplaneWitness wit;
  wit.N = N;
  wit.epsilon = epsilon;
  wit.delta = 1.0;
  wit.in_asymptotic_regime = norm_cap - std::sqrt(bd) * h > 0.0;

  for (std::size_t k = 1; k < b; ++k) {
    ConstructionFailure fail{k, {}, h, limit, ""};
    bool accepted = false;
    for (int attempt = 0; attempt < opts.retries && !accepted; ++attempt) {
      TargetChoice target;
      try {
        target = choose_target_w(wit.spanning, b, N, delta_min, opts.target_samples,
                                 derive_seed(seed, 64 * k + static_cast<std::uint64_t>(attempt)));
      } catch (const TargetNotFound& e) {
        fail.message = e.what();
        continue;
      }
      fail.window_center = target.w;
      fail.message = "no admissible orbit point in the window";
      std::int64_t from = 1;
      while (auto n = search_window(alpha, N, epsilon, target.w, from)) {
        std::vector<double> u(b);
        for (std::size_t j = 0; j < b; ++j) u[j] = frac_of_multiple(*n, alpha.coords[j]);
        from = *n + 1;
        if (norm2(u) == 0.0 || sup_norm(u) > norm_cap) continue;
        double margin = 1.0;
        if (!wit.spanning.empty()) {
          margin = subspace_angular_dist(u, wit.spanning);
          if (margin < 0.5 * delta_min) continue;
        }
        wit.n_list.push_back(*n);
        wit.spanning.push_back(std::move(u));
        wit.delta = std::min(wit.delta, margin);
        accepted = true;
        break;
      }
    }
    if (!accepted) return {std::nullopt, std::move(fail)};
  }
  wit.normal = assemble_normal(wit.spanning);
  return {std::move(wit), std::nullopt};
}

WitnessCheck verify_witness(const HyperplaneWitness& w, const Frequency& alpha, double orth_tol) {
  WitnessCheck c;
  auto fail = [&](const std::string& msg) {
    c.ok = false;
    c.violations.push_back(msg);
  };
  const std::size_t b = alpha.dim();
  if (w.n_list.size() + 1 != b || w.spanning.size() + 1 != b) {
    fail("witness must hold b-1 integers and vectors");
    return c;
  }
  if (w.normal.size() != b) {
    fail("normal has the wrong dimension");
    return c;
  }
  const std::int64_t limit = window_search_limit(w.N, w.epsilon);
  const double cap = std::pow(static_cast<double>(w.N), -1.0 / static_cast<double>(b));
  for (std::size_t i = 0; i + 1 < b; ++i) {
    const std::int64_t n = w.n_list[i];
    if (n < 1 || n > limit) fail("n_" + std::to_string(i + 1) + " outside [1, N^(1+2eps)]");
    const auto& u = w.spanning[i];
    if (u.size() != b) {
      fail("spanning vector of wrong dimension");
      continue;
    }
    for (std::size_t j = 0; j < b; ++j) {
      if (!(u[j] >= 0.0 && u[j] <= 1.0)) fail("spanning vector leaves [0,1]^b");
      if (std::abs(u[j] - frac_of_multiple(n, alpha.coords[j])) > 1e-12) fail("spanning vector is not frac(n alpha)");
    }
    if (sup_norm(u) > cap) fail("||{n_" + std::to_string(i + 1) + " alpha}||_inf exceeds N^(-1/b)");
    if (std::abs(dot(u, w.normal)) > orth_tol) fail("normal not orthogonal to spanning vector");
  }
  if (std::abs(norm2(w.normal) - 1.0) > 1e-12) fail("normal is not a unit vector");
  try {
    (void)assemble_normal(w.spanning);
  } catch (const std::invalid_argument&) {
    fail("spanning set does not have rank b-1");
  }
  return c;
}

std::int64_t admissible_k_limit(std::int64_t n, double u_sup, std::int64_t N, std::size_t b) {
  const auto bb = static_cast<std::int64_t>(b);
  const std::int64_t by_index = N / (bb * n);
  if (u_sup == 0.0) return by_index;
  const double bd = static_cast<double>(b);
  double est = std::ceil(1.0 / (bd * u_sup)) - 1.0;
  if (est >= static_cast<double>(by_index)) est = static_cast<double>(by_index) + 1.0;
  auto k = static_cast<std::int64_t>(std::max(est, 0.0));
  while (k > 0 && static_cast<double>(k) * u_sup * bd >= 1.0) --k;
  while (static_cast<double>(k + 1) * u_sup * bd < 1.0 && k < by_index) ++k;
  return std::min(k, by_index);
}

LatticeHitCertificate enumerate_lattice_hits(const HyperplaneWitness& witness, const Frequency& alpha,
                                             std::int64_t N, std::int64_t budget) {
  const std::size_t b = alpha.dim();
  const std::size_t m = witness.n_list.size();
  if (m + 1 != b || witness.spanning.size() != m || witness.normal.size() != b) {
    throw std::invalid_argument("enumerate_lattice_hits: witness does not match alpha");
  }
  if (N < 1) throw std::invalid_argument("enumerate_lattice_hits: N must be >= 1");
  const double bd = static_cast<double>(b);
  const double r = bd / (bd + 1.0);
  const double eps = witness.epsilon;
  const double Nd = static_cast<double>(N);

  LatticeHitCertificate cert;
  cert.bound = std::pow(Nd, (bd - 1.0) / (bd + 1.0) - eps);
  const double per = std::min(std::pow(Nd, 1.0 - r * (1.0 + 2.0 * eps)), std::pow(Nd, r / bd)) / bd;
  cert.product_bound = std::pow(per, static_cast<double>(m));

  std::vector<double> usup(m);
  double tuples = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    usup[i] = sup_norm(witness.spanning[i]);
    cert.k_limits.push_back(admissible_k_limit(witness.n_list[i], usup[i], N, b));
    tuples *= static_cast<double>(cert.k_limits[i]);
  }
  if (tuples == 0.0) return cert;

  std::int64_t lead = cert.k_limits[0];
  if (tuples > static_cast<double>(budget)) {
    cert.exhaustive = false;
    lead = std::max<std::int64_t>(1, static_cast<std::int64_t>(static_cast<double>(budget) /
                                                                (tuples / static_cast<double>(lead))));
  }

  std::vector<std::vector<LatticeHit>> by_lead(static_cast<std::size_t>(lead));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k1 = 1; k1 <= lead; ++k1) {
    std::vector<std::int64_t> k(m, 1);
    k[0] = k1;
    auto& out = by_lead[static_cast<std::size_t>(k1 - 1)];
    while (true) {
      LatticeHit hit;
      hit.k = k;
      hit.point.assign(b, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        hit.n += k[i] * witness.n_list[i];
        for (std::size_t j = 0; j < b; ++j) hit.point[j] += static_cast<double>(k[i]) * witness.spanning[i][j];
      }
      hit.plane_residual = std::abs(dot(hit.point, witness.normal));
      for (std::size_t j = 0; j < b; ++j) {
        hit.orbit_error = std::max(hit.orbit_error, std::abs(hit.point[j] - frac_of_multiple(hit.n, alpha.coords[j])));
      }
      out.push_back(std::move(hit));
      std::size_t i = 1;
      while (i < m && k[i] == cert.k_limits[i]) k[i++] = 1;
      if (i == m) break;
      ++k[i];
    }
  }

  for (auto& v : by_lead) {
    for (auto& h : v) cert.hits.push_back(std::move(h));
  }
  std::stable_sort(cert.hits.begin(), cert.hits.end(), [](const LatticeHit& a, const LatticeHit& c) { return a.n < c.n; });
  cert.hits.erase(std::unique(cert.hits.begin(), cert.hits.end(),
                              [](const LatticeHit& a, const LatticeHit& c) { return a.n == c.n; }),
                  cert.hits.end());
  cert.count = static_cast<std::int64_t>(cert.hits.size());

  for (const auto& h : cert.hits) {
    cert.max_plane_residual = std::max(cert.max_plane_residual, h.plane_residual);
    cert.max_orbit_error = std::max(cert.max_orbit_error, h.orbit_error);
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t kn = h.k[i] * witness.n_list[i];
      if (kn < 1 || static_cast<double>(kn) * bd > Nd || !(static_cast<double>(h.k[i]) * usup[i] * bd < 1.0)) {
        cert.checks_ok = false;
      }
    }
  }
  if (cert.max_plane_residual > 1e-9 || cert.max_orbit_error > 1e-9) cert.checks_ok = false;
  return cert;
}

std::int64_t count_hyperplane_hits(const Frequency& alpha, std::int64_t N, const std::vector<double>& normal,
                                   double tol, double offset) {
  if (!(tol > 0.0)) throw std::invalid_argument("count_hyperplane_hits: tol must be > 0");
  if (normal.size() != alpha.dim()) throw std::invalid_argument("count_hyperplane_hits: normal has the wrong dimension");
  const auto plane = SemiAlgebraicSet::hyperplane_in_cube(normal, offset);
  return count_hits(TorusVector::zero(alpha.dim()), alpha, N, plane, tol).count;
}

std::int64_t witness_scale_for(std::int64_t N, std::size_t b) {
  const double bd = static_cast<double>(b);
  return std::max<std::int64_t>(2, std::llround(std::pow(static_cast<double>(N), bd / (bd + 1.0))));
}

LowerBoundRun run_lower_bound(const Frequency& alpha, std::int64_t N, double epsilon, double delta_min,
                              std::uint64_t seed, const ConstructionOptions& opts, double plane_tol) {
  LowerBoundRun run;
  run.N = N;
  run.plane_tol = plane_tol;
  run.witness_scale = witness_scale_for(N, alpha.dim());
  run.construction = construct_independent_vectors(alpha, run.witness_scale, epsilon, delta_min, seed, opts);
  if (!run.construction.ok()) return run;
  const HyperplaneWitness& w = *run.construction.witness;
  run.witness_check = verify_witness(w, alpha);
  run.certificate = enumerate_lattice_hits(w, alpha, N);
  run.plane_count = count_hyperplane_hits(alpha, N, w.normal, plane_tol);
  run.success = run.witness_check->ok && run.certificate->checks_ok &&
                static_cast<double>(run.certificate->count) >= run.certificate->bound;
  return run;
}

HyperplaneFamily build_hyperplane_family(const Frequency& alpha, const std::vector<std::int64_t>& n_grid,
                                         double epsilon, double delta_min, std::uint64_t seed,
                                         const ConstructionOptions& opts) {
  HyperplaneFamily f;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const std::int64_t M = witness_scale_for(n_grid[i], alpha.dim());
    const auto out = construct_independent_vectors(alpha, M, epsilon, delta_min, derive_seed(seed, i), opts);
    if (out.ok()) {
      f.built_for.push_back(n_grid[i]);
      f.normals.push_back(out.witness->normal);
    } else {
      f.failed.push_back(n_grid[i]);
    }
  }
  if (f.normals.empty()) throw std::runtime_error("build_hyperplane_family: no construction succeeded");
  return f;
}

FamilyCount count_family_hits(const Frequency& alpha, std::int64_t N, const HyperplaneFamily& family, double tol) {
  FamilyCount best;
  for (std::size_t i = 0; i < family.normals.size(); ++i) {
    const std::int64_t c = count_hyperplane_hits(alpha, N, family.normals[i], tol);
    if (i == 0 || c > best.count) best = {c, i};
  }
  return best;
}

}  // namespace sadisc
