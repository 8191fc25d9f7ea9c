#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "zetauniv/errors.hpp"
#include "zetauniv/euler_product.hpp"
#include "zetauniv/phase.hpp"
#include "zetauniv/primes.hpp"

using namespace zetauniv;

namespace {

// Direct evaluation with std::pow; accurate only while tau stays small.
Complex direct_log_euler(ComplexPoint s, double tau, double Y) {
  Complex sum = 0.0;
  for (std::uint32_t p = 2; p <= Y; ++p) {
    bool prime = true;
    for (std::uint32_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (prime)
      sum -= std::log(1.0 - std::pow(static_cast<double>(p), -(s + Complex(0, tau))));
  }
  return sum;
}

}  // namespace

TEST_SUITE("euler") {
  TEST_CASE("truncated product matches direct evaluation at small heights") {
    auto table = sieve_primes(2000);
    for (double tau : {0.0, 3.5, 250.0, 999.0}) {
      ComplexPoint s{0.75, 0.3};
      Complex got = log_euler_truncated(s, TallShift::from_double(tau), table, 1500);
      CHECK(std::abs(got - direct_log_euler(s, tau, 1500)) < 1e-10);
    }
  }

  TEST_CASE("tail difference equals the discarded prime-power terms") {
    auto table = sieve_primes(10'000);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> sig(0.6, 0.95), tau(0.0, 500.0);
    for (int trial = 0; trial < 20; ++trial) {
      ComplexPoint s{sig(rng), 0.0};
      double t = tau(rng);
      double Y = 500.0 + 400.0 * trial;
      auto d = tail_difference(s, TallShift::from_double(t), table, Y);
      // Independent: sum over p <= Y and k with p^k > Y of p^{-k s'} / k.
      Complex want = 0.0;
      for (std::uint32_t p : table.primes_up_to(Y)) {
        double pk = p;
        for (int k = 1; k < 200; ++k, pk *= p) {
          if (pk <= Y) continue;
          Complex term = std::pow(static_cast<double>(p), -static_cast<double>(k) * (s + Complex(0, t))) /
                         static_cast<double>(k);
          want += term;
          if (std::abs(term) < 1e-18) break;
        }
      }
      CHECK(std::abs(d.value - want) < 1e-11);
      CHECK(d.bound == doctest::Approx(std::pow(Y, 0.5 - s.real()) / std::log(Y)));
      CHECK(d.within);
    }
  }

  TEST_CASE("shifted sums agree with the pointwise product") {
    auto table = sieve_primes(1000);
    std::vector<ComplexPoint> pts{{0.7, 0.0}, {0.8, 0.05}, {0.75, -0.05}};
    auto primes = table.primes_up_to(1000);
    ShiftedEulerSum sum(pts, primes, 1'000'000);
    for (double off : {0.0, 0.37, 12.5, 999.9}) {
      auto vals = sum.evaluate(off);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        Complex want = log_euler_truncated(pts[j], TallShift{1'000'000, off}, table, 1000);
        CHECK(std::abs(vals[j] - want) < 1e-9);
      }
    }
  }

  TEST_CASE("phase cache matches direct phase reduction") {
    std::vector<std::uint32_t> primes{2, 3, 5, 7919};
    PhaseCache cache(123'456'789'012, primes);
    for (double off : {0.0, 0.5, 77.25, 99999.0})
      for (std::size_t i = 0; i < primes.size(); ++i) {
        double want = phase_fraction(TallShift{123'456'789'012, off},
                                     frequency_dd(primes[i]));
        CHECK(circle_distance(cache.phase(i, off) - want) < 1e-12);
      }
    CHECK(cache.frequency(0) == doctest::Approx(std::log(2.0) / (2 * M_PI)));
  }

  TEST_CASE("truncation parameters") {
    auto tp = TruncationParams::from_height(1e6, 3.0);
    CHECK(tp.Y == doctest::Approx(std::pow(std::log(1e6), 3.0)));
    CHECK_THROWS_AS(TruncationParams::from_height(1.0, 3.0), ConfigError);
    CHECK_THROWS_AS(TruncationParams::from_height(3.0, 0.1), ConfigError);
  }

  TEST_CASE("cutoff beyond the table") {
    auto table = sieve_primes(100);
    CHECK_THROWS_AS(log_euler_truncated({0.8, 0}, {}, table, 101), TableError);
    CHECK_THROWS_AS(log_primepower_sum({0.8, 0}, {}, table, 1000), TableError);
  }
}
