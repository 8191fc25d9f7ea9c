#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "zetauniv/errors.hpp"
#include "zetauniv/phase.hpp"
#include "zetauniv/tau_search.hpp"

using namespace zetauniv;

namespace {

AngleAssignment make(std::vector<std::uint32_t> primes, std::vector<double> theta) {
  AngleAssignment a;
  a.primes = std::move(primes);
  a.theta = std::move(theta);
  return a;
}

}  // namespace

TEST_SUITE("tau_search") {
  TEST_CASE("window construction") {
    auto w = SearchWindow::from_exponent(1'000'000, 3.0);
    CHECK(w.H == doctest::Approx(std::pow(std::log(1e6), 3.0)));
    CHECK(w.B.has_value());
    CHECK_THROWS_AS(SearchWindow::with_length(100, 200), ConfigError);
    CHECK_THROWS_AS(SearchWindow::with_length(100, 0), ConfigError);
  }

  TEST_CASE("interval algebra") {
    std::vector<Interval> a{{0, 2}, {3, 5}}, b{{1, 4}};
    CHECK(intersect(a, b) == std::vector<Interval>{{1, 2}, {3, 4}});
    CHECK(unite({{3, 5}, {0, 2}, {1, 4}}) == std::vector<Interval>{{0, 5}});
    auto hs = HitSet::from_intervals({{0, 1}, {2, 2.5}});
    CHECK(hs.measure == 1.5);
    CHECK(hs.contains(0.5));
    CHECK(!hs.contains(1.5));
    CHECK(hs.contains(2.25));
  }

  TEST_CASE("membership examples") {
    CHECK(c_delta_contains(TallShift{12345, 0.6}, AngleAssignment{}, 0.01));
    auto two = make({2}, {0.0});
    CHECK(c_delta_contains(TallShift::from_double(kTwoPi / std::log(2.0)), two, 1e-6));
    CHECK(!c_delta_contains(TallShift{}, make({2}, {0.5}), 0.1));
    // Nearest-integer distance wraps: theta 0.99 is close to phase 0.
    CHECK(c_delta_contains(TallShift{}, make({2}, {0.99}), 0.1));
  }

  TEST_CASE("scan examples") {
    auto w = SearchWindow::with_length(1000, 100);
    auto empty = scan_c_delta(w, AngleAssignment{}, 0.3);
    CHECK(empty.intervals == std::vector<Interval>{{0, 100}});
    CHECK(empty.measure == 100);

    const double period = kTwoPi / std::log(2.0);
    for (double theta : {0.0, 0.3, 0.77}) {
      auto hs = scan_c_delta(w, make({2}, {theta}), 0.5);
      CHECK(std::abs(hs.measure - 50.0) / 50.0 <= 2 * period / 100);
    }

    auto big = scan_c_delta(SearchWindow::with_length(1'000'000, 1e5),
                            make({2, 3}, {0.2, 0.7}), 0.4);
    CHECK(big.measure / 1e5 >= 0.152);
    CHECK(big.measure / 1e5 <= 0.168);
  }

  TEST_CASE("scan agrees with pointwise membership") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<AngleAssignment> configs{
        make({2}, {0.4}), make({2, 3}, {0.1, 0.9}), make({2, 3, 5}, {0.1, 0.5, 0.8}),
        make({3, 7, 11, 13}, {0.0, 0.25, 0.5, 0.75})};
    auto w = SearchWindow::with_length(987'654'321, 500);
    for (const auto& a : configs) {
      const double delta = 0.45;
      auto hs = scan_c_delta(w, a, delta);
      int mismatches = 0;
      for (int i = 0; i < 10'000; ++i) {
        double off = u(rng) * w.H;
        bool want = c_delta_contains(w.at(off), a, delta);
        // Skip points within rounding distance of an interval end.
        bool near_edge = false;
        for (const auto& iv : hs.intervals)
          near_edge = near_edge || std::abs(off - iv.start) < 1e-7 ||
                      std::abs(off - iv.end) < 1e-7;
        if (!near_edge && want != hs.contains(off)) ++mismatches;
      }
      CHECK(mismatches == 0);
    }
  }

  TEST_CASE("range scan is a restriction of the full scan") {
    auto w = SearchWindow::with_length(50'000, 400);
    auto a = make({2, 5}, {0.3, 0.6});
    auto full = scan_c_delta(w, a, 0.3);
    auto part = scan_c_delta_range(w, a, 0.3, 100, 250);
    std::vector<Interval> window{{100, 250}};
    auto want = intersect(full.intervals, window);
    REQUIRE(part.intervals.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(part.intervals[i].start == doctest::Approx(want[i].start).epsilon(1e-12));
      CHECK(part.intervals[i].end == doctest::Approx(want[i].end).epsilon(1e-12));
    }
  }

  TEST_CASE("scan input checks") {
    auto w = SearchWindow::with_length(1000, 10);
    CHECK_THROWS_AS(scan_c_delta(w, make({2}, {0.0}), 0.0), ConfigError);
    CHECK_THROWS_AS(scan_c_delta(w, make({2}, {0.0}), 1.0), ConfigError);
    AngleAssignment many;
    for (std::uint32_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
      many.primes.push_back(p);
      many.theta.push_back(0.0);
    }
    CHECK_THROWS_AS(scan_c_delta(w, many, 0.5), CapacityError);
    CHECK_THROWS_AS(lattice_find_first(many, 0.5, w), CapacityError);
  }

  TEST_CASE("equidistribution examples") {
    const double a2 = std::log(2.0) / kTwoPi, a3 = std::log(3.0) / kTwoPi,
                 a5 = std::log(5.0) / kTwoPi;
    std::vector<double> one{a2};
    std::vector<std::pair<double, double>> full{{0.0, 1.0}};
    auto r = equidistribution_check(one, full, SearchWindow::with_length(100'000, 100'000),
                                    1000);
    CHECK(r.empirical == 1.0);
    CHECK(r.volume == 1.0);

    std::vector<std::pair<double, double>> half{{0.0, 0.5}};
    r = equidistribution_check(one, half, SearchWindow::with_length(100'000, 100'000),
                               200'000);
    CHECK(std::abs(r.empirical - 0.5) < 0.01);

    std::vector<double> three{a2, a3, a5};
    std::vector<std::pair<double, double>> box(3, {0.0, 0.4});
    r = equidistribution_check(three, box, SearchWindow::with_length(1'000'000, 1'000'000),
                               1'000'000);
    CHECK(r.volume == doctest::Approx(0.064));
    CHECK(std::abs(r.empirical - 0.064) < 0.01);
  }

  TEST_CASE("lattice search examples") {
    auto w = SearchWindow::with_length(1'000'000, 10'000);
    auto start = lattice_find_first(AngleAssignment{}, 0.3, w);
    REQUIRE(start);
    CHECK(start->base == w.T);
    CHECK(start->offset == 0.0);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = make({2, 3, 5, 7}, {u(rng), u(rng), u(rng), u(rng)});
      auto hit = lattice_find_first(a, 0.9, w);
      REQUIRE(hit);
      CHECK(c_delta_contains(*hit, a, 0.9));
    }
  }

  TEST_CASE("lattice search finds hits whenever the scan does") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<std::uint32_t> pool{2, 3, 5, 7, 11};
    int nonempty = 0, found = 0;
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t m = 2 + trial % 4;
      AngleAssignment a;
      for (std::size_t i = 0; i < m; ++i) {
        a.primes.push_back(pool[i]);
        a.theta.push_back(u(rng));
      }
      auto w = SearchWindow::with_length(10'000'000 + 12'345 * trial, 2000);
      const double delta = 0.15;
      if (scan_c_delta(w, a, delta).intervals.empty()) continue;
      ++nonempty;
      auto hit = lattice_find_first(a, delta, w);
      if (hit) {
        ++found;
        CHECK(c_delta_contains(*hit, a, delta));
        CHECK(hit->approx() >= w.T);
        CHECK(hit->approx() <= w.T + w.H);
      }
    }
    REQUIRE(nonempty >= 20);
    CHECK(found >= 0.95 * nonempty);
  }
}
