#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "sadisc/diophantine.hpp"
#include "sadisc/reference.hpp"

using namespace sadisc;

namespace {

const Frequency kGolden{{std::numbers::phi - 1.0}, "golden"};
const Frequency kRoot23{{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}, "sqrt2,sqrt3"};

}  // namespace

TEST_SUITE("diophantine") {
  TEST_CASE("golden mean margin at tau = 1 is attained at n = 1") {
    const auto r = wdc_margin(kGolden, 1.0, 100000);
    CHECK(r.gamma_lower == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    REQUIRE(r.argmin.size() == 1);
    CHECK(r.argmin[0] == 1);
    CHECK(r.kind == ConditionKind::WDC);
    CHECK(r.scan_bound == 100000);
  }

  TEST_CASE("golden mean tail approaches 1/sqrt(5)") {
    // min of n ||n phi|| over [n_max/10, n_max] is attained at a Fibonacci number.
    const std::int64_t n_max = 1000000;
    double tail = INFINITY;
    for (std::int64_t n = n_max / 10; n <= n_max; ++n) {
      tail = std::min(tail, static_cast<double>(n) * oracle::torus_dist(oracle::frac_exact(n, kGolden.coords[0]), 0.0));
    }
    CHECK(tail >= 0.44);
    CHECK(tail <= 0.51);
    CHECK(std::abs(tail - 1.0 / std::sqrt(5.0)) < 1e-4);
  }

  TEST_CASE("wdc scan equals brute force") {
    for (double tau : {0.5, 0.6, 1.0}) {
      const auto got = wdc_margin(kRoot23, tau, 20000);
      const auto want = oracle::wdc_bruteforce(kRoot23.coords, tau, 20000);
      CHECK(got.gamma_lower == doctest::Approx(want.first).epsilon(1e-12));
      CHECK(got.argmin[0] == want.second);
      const auto ref = reference::min_weighted_orbit_norm(kRoot23, 20000, tau);
      CHECK(ref.first == got.gamma_lower);
      CHECK(ref.second == got.argmin[0]);
    }
  }

  TEST_CASE("rational frequencies resonate") {
    const auto r = wdc_margin(Frequency{{0.25, 0.5}, ""}, 0.5, 100);
    CHECK(r.gamma_lower == 0.0);
    CHECK(r.argmin[0] == 4);
  }

  TEST_CASE("dc margin in one dimension matches the wdc scan") {
    const auto dc = dc_margin(kGolden, 1.0, 5000);
    const auto wdc = wdc_margin(kGolden, 1.0, 5000);
    CHECK(dc.gamma_lower == doctest::Approx(wdc.gamma_lower).epsilon(1e-12));
    CHECK(dc.kind == ConditionKind::DC);
  }

  TEST_CASE("dc margin in two dimensions equals brute force") {
    const std::int64_t B = 60;
    const double tau = 2.0;
    double best = INFINITY;
    for (std::int64_t i = -B; i <= B; ++i) {
      for (std::int64_t j = -B; j <= B; ++j) {
        if (i == 0 && j == 0) continue;
        double f = oracle::frac_exact(i, kRoot23.coords[0]) + oracle::frac_exact(j, kRoot23.coords[1]);
        f -= std::floor(f);
        const double norm = static_cast<double>(std::max(std::llabs(i), std::llabs(j)));
        best = std::min(best, std::pow(norm, tau) * oracle::torus_dist(f, 0.0));
      }
    }
    const auto r = dc_margin(kRoot23, tau, B);
    CHECK(r.gamma_lower == doctest::Approx(best).epsilon(1e-9));
    CHECK(r.argmin.size() == 2);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(wdc_margin(kRoot23, 0.4, 10), std::invalid_argument);
    CHECK_THROWS_AS(wdc_margin(kRoot23, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wdc_margin(kRoot23, 1.0, kOrbitIndexBudget + 1), std::out_of_range);
    CHECK_THROWS_AS(dc_margin(kRoot23, 1.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(dc_margin(kRoot23, 2.0, 100000, 1e6), std::length_error);
    CHECK_THROWS_AS(wdc_margin(Frequency{{}, ""}, 1.0, 10), std::invalid_argument);
  }

  TEST_CASE("continued fractions") {
    CHECK(continued_fraction(kGolden.coords[0], 20) == std::vector<std::int64_t>(20, 1));
    const auto s2 = continued_fraction(std::sqrt(2.0) - 1.0, 15);
    CHECK(s2 == std::vector<std::int64_t>(15, 2));
    CHECK(continued_fraction(0.375, 10) == std::vector<std::int64_t>{2, 1, 2});
    CHECK_THROWS_AS(continued_fraction(1.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(continued_fraction(0.3, 41), std::out_of_range);
  }
}
