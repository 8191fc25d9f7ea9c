#include <cmath>
#include <complex>

#include "doctest.h"
#include "zetauniv/errors.hpp"
#include "zetauniv/zeta.hpp"

using namespace zetauniv;

#include "oracle/zeta_values.inc"

TEST_SUITE("zeta") {
  TEST_CASE("zeta(2) and zeta(0.5)") {
    CHECK(std::abs(zeta({2.0, 0.0}) - 1.6449340668482264) < 1e-13);
    CHECK(std::abs(zeta({0.5, 0.0}) - (-1.4603545088095868)) < 1e-12);
    CHECK(std::abs(zeta({3.0, 0.0}) - 1.2020569031595942) < 1e-13);
  }

  TEST_CASE("frozen reference values") {
    for (const auto& row : kZetaValues) {
      Complex want(row[2], row[3]);
      Complex got = zeta({row[0], row[1]});
      INFO("s = " << row[0] << " + " << row[1] << "i");
      CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("shifted evaluation agrees with direct evaluation") {
    for (const auto& row : kZetaValues) {
      if (row[1] < 1000.0) continue;
      const double t = row[1];
      const auto base = static_cast<std::int64_t>(std::floor(t)) - 3;
      Complex got = zeta_shifted({row[0], 1.25}, TallShift{base, t - base - 1.25});
      CHECK(std::abs(got - Complex(row[2], row[3])) <=
            1e-8 * std::max(1.0, std::abs(Complex(row[2], row[3]))));
    }
  }

  TEST_CASE("first zero ordinates are minima of |zeta| on the critical line") {
    CHECK(std::abs(zeta({0.5, 14.134725141734693})) < 1e-9);
    CHECK(std::abs(zeta({0.5, 21.022039638771555})) < 1e-9);
    CHECK(std::abs(zeta({0.5, 14.2})) > 1e-2);
  }

  TEST_CASE("log zeta follows the horizontal branch") {
    for (const auto& row : kLogZetaValues) {
      Complex got = log_zeta({row[0], row[1]});
      INFO("s = " << row[0] << " + " << row[1] << "i");
      CHECK(std::abs(got - Complex(row[2], row[3])) < 1e-8);
    }
    CHECK(std::abs(log_zeta({2.0, 0.0}) - std::log(1.6449340668482264)) < 1e-13);
  }

  TEST_CASE("log zeta exponentiates back to zeta") {
    for (double t : {10.0, 77.7, 1234.5, 98765.4}) {
      ComplexPoint s{0.7, t};
      CHECK(std::abs(std::exp(log_zeta(s)) - zeta(s)) < 1e-9 * std::abs(zeta(s)));
    }
  }

  TEST_CASE("zeta line reuses phases across sigma") {
    ZetaLine line(TallShift{100000, 0.5});
    for (double sigma : {0.55, 0.8, 1.5, 3.0})
      CHECK(std::abs(line.at(sigma) - zeta({sigma, 100000.5})) < 1e-9);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}), PoleError);
    CHECK_THROWS_AS(zeta({0.0, 5.0}), DomainError);
    CHECK_THROWS_AS(zeta({-1.0, 5.0}), DomainError);
    CHECK_THROWS_AS(zeta({0.5, 2e7}), RangeError);
    CHECK_THROWS_AS(log_zeta({0.5, 14.134725141734693}), BranchError);
    CHECK_THROWS_AS(log_zeta({0.5, 0.0}), PoleError);
    EvalConfig bad;
    bad.euler_maclaurin_terms = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
  }
}
