#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "doctest.h"
#include "zetauniv/ddouble.hpp"
#include "zetauniv/phase.hpp"

using namespace zetauniv;

namespace {

// frac((base + offset) log p / 2pi) with 256-bit arithmetic.
double mpfr_phase(std::int64_t base, double offset, std::uint64_t p) {
  mpfr_t tau, lp, pi2, x;
  mpfr_inits2(256, tau, lp, pi2, x, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(tau, base, MPFR_RNDN);
  mpfr_add_d(tau, tau, offset, MPFR_RNDN);
  mpfr_set_ui(lp, p, MPFR_RNDN);
  mpfr_log(lp, lp, MPFR_RNDN);
  mpfr_const_pi(pi2, MPFR_RNDN);
  mpfr_mul_ui(pi2, pi2, 2, MPFR_RNDN);
  mpfr_mul(x, tau, lp, MPFR_RNDN);
  mpfr_div(x, x, pi2, MPFR_RNDN);
  mpfr_frac(x, x, MPFR_RNDN);
  double out = mpfr_get_d(x, MPFR_RNDN);
  if (out < 0) out += 1.0;
  mpfr_clears(tau, lp, pi2, x, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace

TEST_SUITE("phase") {
  TEST_CASE("double-double log agrees with 256-bit log") {
    for (std::uint64_t n : {2ull, 3ull, 10ull, 97ull, 65536ull, 999983ull,
                            123456789ull}) {
      mpfr_t x;
      mpfr_init2(x, 256);
      mpfr_set_ui(x, n, MPFR_RNDN);
      mpfr_log(x, x, MPFR_RNDN);
      auto v = log_dd(n);
      mpfr_sub_d(x, x, v.hi, MPFR_RNDN);
      mpfr_sub_d(x, x, v.lo, MPFR_RNDN);
      CHECK(std::abs(mpfr_get_d(x, MPFR_RNDN)) < 1e-28 * std::log(double(n)));
      mpfr_clear(x);
    }
  }

  TEST_CASE("log table entries match log_dd") {
    auto table = log_table(5000);
    REQUIRE(table->size() > 5000);
    for (std::uint64_t n : {1ull, 2ull, 360ull, 4096ull, 4999ull}) {
      auto a = (*table)[n];
      auto b = log_dd(n);
      CHECK(std::abs((a.hi - b.hi) + (a.lo - b.lo)) < 1e-30 + 1e-30 * b.hi);
    }
  }

  TEST_CASE("split-precision phases at heights up to 1e12") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> base_dist(0, 1'000'000'000'000);
    std::uniform_real_distribution<double> off(-50.0, 50.0);
    const std::uint64_t primes[] = {2, 3, 5, 7, 101, 7919, 1'000'003};
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t base = base_dist(rng);
      const double offset = off(rng);
      for (std::uint64_t p : primes) {
        double ours = phase_fraction(TallShift{base, offset}, frequency_dd(p));
        double exact = mpfr_phase(base, offset, p);
        CHECK(circle_distance(ours - exact) < 1e-9);
      }
    }
  }

  TEST_CASE("reduced angle is the phase times 2pi") {
    TallShift tau{987'654'321, 0.125};
    for (std::uint64_t n : {2ull, 12ull, 1000ull}) {
      double a = reduced_angle(tau, log_dd(n));
      double f = mpfr_phase(tau.base, tau.offset, n);
      CHECK(a >= 0.0);
      CHECK(a < 2 * 3.141592653589793);
      CHECK(circle_distance(a / (2 * 3.141592653589793) - f) < 1e-9);
    }
  }

  TEST_CASE("circle distance") {
    CHECK(circle_distance(0.0) == 0.0);
    CHECK(circle_distance(0.3) == doctest::Approx(0.3));
    CHECK(circle_distance(0.7) == doctest::Approx(0.3));
    CHECK(circle_distance(-0.2) == doctest::Approx(0.2));
    CHECK(circle_distance(5.5) == doctest::Approx(0.5));
  }

  TEST_CASE("tall shift normalization") {
    auto t = TallShift{10, 3.75}.normalized();
    CHECK(t.base == 13);
    CHECK(t.offset == doctest::Approx(0.75));
    auto u = TallShift::from_double(1234.5);
    CHECK(u.base + u.offset == doctest::Approx(1234.5));
    CHECK(std::abs(u.offset) < 1.0);
  }
}
