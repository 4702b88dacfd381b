#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "sadisc/lowerbound.hpp"
#include "sadisc/reference.hpp"

using namespace sadisc;

namespace {

const Frequency kRoot23{{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}, ""};
const Frequency kRoot235{{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0, std::sqrt(5.0) - 2.0}, ""};

double norm2(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

}  // namespace

TEST_SUITE("lowerbound") {
  TEST_CASE("window geometry") {
    CHECK(window_search_limit(10000, 0.1) == 63096);
    CHECK(window_search_limit(100, 0.0) == 100);
    CHECK(window_half_width(10000, 0.1, 2) == doctest::Approx(std::pow(10000.0, -0.55)));
    CHECK(witness_scale_for(10000, 2) == 464);
    CHECK(witness_scale_for(10000, 3) == 1000);
    CHECK(witness_scale_for(2, 2) == 2);
  }

  TEST_CASE("target directions") {
    const auto base = choose_target_w({}, 3, 1000, 0.1, 100, 1);
    CHECK(base.delta == 1.0);
    CHECK(norm2(base.w) == doctest::Approx(0.05));
    for (double c : base.w) CHECK(c >= 0.0);
    const std::vector<std::vector<double>> span{{0.01, 0.0, 0.0}};
    const auto next = choose_target_w(span, 3, 1000, 0.1, 500, 2);
    CHECK(next.delta >= 0.1);
    CHECK(next.delta == doctest::Approx(subspace_angular_dist(next.w, span)));
    CHECK(norm2(next.w) == doctest::Approx(0.05));
    CHECK_THROWS_AS(choose_target_w({}, 2, 100, 1.5, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(choose_target_w({{0.1, 0.1}}, 2, 100, 0.1, 10, 1), std::invalid_argument);
    // A direction at angular distance 0.999 from (1,1,1) in the positive orthant does not exist.
    CHECK_THROWS_AS(choose_target_w({{0.01, 0.01, 0.01}}, 3, 100, 0.999, 200, 1), TargetNotFound);
  }

  TEST_CASE("window search equals the serial scan") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto t = choose_target_w({}, 2, 2000, 0.1, 10, seed);
      const auto got = search_window(kRoot23, 2000, 0.1, t.w);
      const auto want = reference::search_window(kRoot23, 2000, 0.1, t.w);
      CHECK(got == want);
      if (got) {
        const double h = window_half_width(2000, 0.1, 2);
        for (std::size_t j = 0; j < 2; ++j) {
          CHECK(std::abs(frac_of_multiple(*got, kRoot23.coords[j]) - t.w[j]) <= h);
        }
        CHECK(search_window(kRoot23, 2000, 0.1, t.w, *got + 1) == reference::search_window(kRoot23, 2000, 0.1, t.w, *got + 1));
      }
    }
    // Centres away from the origin are allowed; centres outside the cube are rejected.
    CHECK(search_window(kRoot23, 1000, 0.1, {0.5, 0.5}).has_value());
    CHECK_THROWS_AS(search_window(kRoot23, 1000, 0.1, {1.5, 1.5}), std::invalid_argument);
  }

  TEST_CASE("normals are orthogonal unit vectors") {
    const auto n2 = assemble_normal({{0.3, 0.4}});
    CHECK(n2[0] == doctest::Approx(0.8));
    CHECK(n2[1] == doctest::Approx(-0.6));
    const std::vector<std::vector<double>> span{{0.01, 0.02, 0.005}, {0.003, -0.001, 0.02}};
    const auto n3 = assemble_normal(span);
    CHECK(norm2(n3) == doctest::Approx(1.0));
    for (const auto& v : span) CHECK(std::abs(std::inner_product(v.begin(), v.end(), n3.begin(), 0.0)) < 1e-15);
    CHECK(n3[0] > 0.0);
    CHECK_THROWS_AS(assemble_normal({{0.1, 0.2, 0.3}, {0.2, 0.4, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_normal({{0.0, 0.0}}), std::invalid_argument);
  }

  TEST_CASE("construction in two and three dimensions") {
    for (const auto* alpha : {&kRoot23, &kRoot235}) {
      const auto out = construct_independent_vectors(*alpha, 1000, 0.1, 0.1, 7);
      REQUIRE(out.ok());
      const auto& w = *out.witness;
      CHECK(w.n_list.size() + 1 == alpha->dim());
      CHECK(w.delta >= 0.1);
      const auto check = verify_witness(w, *alpha);
      CHECK_MESSAGE(check.ok, (check.violations.empty() ? "" : check.violations.front()));
      for (std::size_t i = 0; i < w.n_list.size(); ++i) {
        for (std::size_t j = 0; j < alpha->dim(); ++j) {
          CHECK(oracle::torus_dist(w.spanning[i][j], oracle::frac_exact(w.n_list[i], alpha->coords[j])) < 1e-15);
        }
      }
      const auto again = construct_independent_vectors(*alpha, 1000, 0.1, 0.1, 7);
      CHECK(again.witness->n_list == w.n_list);
    }
    CHECK_THROWS_AS(construct_independent_vectors(Frequency{{0.3}, ""}, 1000, 0.1, 0.1, 1), std::invalid_argument);
  }

  TEST_CASE("verify_witness flags tampering") {
    auto out = construct_independent_vectors(kRoot23, 1000, 0.1, 0.1, 3);
    REQUIRE(out.ok());
    auto w = *out.witness;
    w.normal = {1.0, 0.0};
    CHECK_FALSE(verify_witness(w, kRoot23).ok);
    w = *out.witness;
    w.n_list[0] += 1;
    CHECK_FALSE(verify_witness(w, kRoot23).ok);
  }

  TEST_CASE("a failed search reports the induction step") {
    ConstructionOptions opts;
    opts.retries = 1;
    opts.target_samples = 1;
    const auto out = construct_independent_vectors(Frequency{{0.5, 0.5}, ""}, 1000, 0.1, 0.1, 1, opts);
    CHECK_FALSE(out.ok());
    REQUIRE(out.failure.has_value());
    CHECK(out.failure->step == 1);
    CHECK(out.failure->search_limit == window_search_limit(1000, 0.1));
  }

  TEST_CASE("admissible k limits") {
    CHECK(admissible_k_limit(10, 0.0, 100, 2) == 5);
    CHECK(admissible_k_limit(10, 0.1, 1000, 2) == 4);  // 5 * 0.1 * 2 = 1 is excluded
    CHECK(admissible_k_limit(10, 0.01, 1000, 2) == 49);
    CHECK(admissible_k_limit(10, 0.01, 100, 2) == 5);
    for (std::int64_t n : {1, 7, 33}) {
      for (double u : {0.003, 0.0417, 0.2}) {
        const std::int64_t k = admissible_k_limit(n, u, 5000, 3);
        CHECK(3 * k * n <= 5000);
        CHECK(k * u * 3 < 1.0);
        CHECK(((3 * (k + 1) * n > 5000) || ((k + 1) * u * 3 >= 1.0)));
      }
    }
  }

  TEST_CASE("lattice certificate points are orbit points on the plane") {
    for (const auto* alpha : {&kRoot23, &kRoot235}) {
      const auto out = construct_independent_vectors(*alpha, witness_scale_for(20000, alpha->dim()), 0.1, 0.1, 11);
      REQUIRE(out.ok());
      const auto cert = enumerate_lattice_hits(*out.witness, *alpha, 20000);
      CHECK(cert.checks_ok);
      CHECK(cert.exhaustive);
      std::int64_t tuples = 1;
      for (auto k : cert.k_limits) tuples *= k;
      CHECK(cert.count <= tuples);
      CHECK(cert.count == static_cast<std::int64_t>(cert.hits.size()));
      std::set<std::int64_t> seen;
      for (const auto& h : cert.hits) {
        CHECK(seen.insert(h.n).second);
        CHECK(h.n >= 1);
        CHECK(h.n <= 20000);
        for (std::size_t j = 0; j < alpha->dim(); ++j) {
          CHECK(std::abs(h.point[j] - oracle::frac_exact(h.n, alpha->coords[j])) < 1e-9);
        }
        CHECK(h.plane_residual < 1e-9);
      }
      // Every certified point is counted by the plane count.
      CHECK(count_hyperplane_hits(*alpha, 20000, out.witness->normal, 1e-9) >= cert.count);
    }
  }

  TEST_CASE("truncated enumeration is flagged") {
    const auto out = construct_independent_vectors(kRoot235, 1000, 0.1, 0.1, 11);
    REQUIRE(out.ok());
    const auto cert = enumerate_lattice_hits(*out.witness, kRoot235, 1000000, 4);
    REQUIRE(cert.k_limits[0] * cert.k_limits[1] > 4);
    CHECK_FALSE(cert.exhaustive);
    CHECK(cert.count <= std::max<std::int64_t>(4, cert.k_limits[1]));
  }

  TEST_CASE("plane count equals the direct loop") {
    const std::vector<double> normal{0.6, -0.8};
    for (double tol : {1e-3, 1e-2}) {
      std::int64_t naive = 0;
      for (std::int64_t n = 1; n <= 20000; ++n) {
        const double d = normal[0] * frac_of_multiple(n, kRoot23.coords[0]) + normal[1] * frac_of_multiple(n, kRoot23.coords[1]);
        naive += std::abs(d) <= tol;
      }
      CHECK(count_hyperplane_hits(kRoot23, 20000, normal, tol) == naive);
    }
    CHECK_THROWS_AS(count_hyperplane_hits(kRoot23, 100, normal, 0.0), std::invalid_argument);
  }

  TEST_CASE("pipeline and plane family") {
    const auto run = run_lower_bound(kRoot23, 10000, 0.1, 0.1, 1);
    CHECK(run.witness_scale == 464);
    REQUIRE(run.construction.ok());
    REQUIRE(run.witness_check.has_value());
    CHECK(run.witness_check->ok);
    REQUIRE(run.certificate.has_value());
    CHECK(run.certificate->checks_ok);
    CHECK(run.plane_count >= run.certificate->count);
    CHECK(run.success == (run.certificate->count >= run.certificate->bound));

    const std::vector<std::int64_t> grid{1000, 10000};
    const auto fam = build_hyperplane_family(kRoot23, grid, 0.1, 0.1, 1);
    CHECK(fam.normals.size() + fam.failed.size() == grid.size());
    const auto fc = count_family_hits(kRoot23, 10000, fam, 1e-9);
    std::int64_t best = 0;
    for (const auto& n : fam.normals) best = std::max(best, count_hyperplane_hits(kRoot23, 10000, n, 1e-9));
    CHECK(fc.count == best);
    CHECK(count_hyperplane_hits(kRoot23, 10000, fam.normals[fc.best_plane], 1e-9) == best);
  }
}
