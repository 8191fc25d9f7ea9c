#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "zetauniv/errors.hpp"
#include "zetauniv/fit.hpp"
#include "zetauniv/phase.hpp"

using namespace zetauniv;

namespace {

std::vector<Complex> synthesize(const AngleAssignment& a, const Disc& disc,
                                std::size_t n) {
  std::vector<Complex> g;
  for (ComplexPoint s : disc.boundary(n)) g.push_back(twisted_product(a, s));
  return g;
}

}  // namespace

TEST_SUITE("fit") {
  TEST_CASE("disc geometry") {
    Disc d{{0.8, 0.0}, 0.05};
    CHECK(d.inside_strip());
    CHECK_NOTHROW(d.validate());
    auto pts = d.boundary(4);
    REQUIRE(pts.size() == 4);
    CHECK(std::abs(pts[0] - Complex(0.85, 0.0)) < 1e-15);
    CHECK(std::abs(pts[1] - Complex(0.8, 0.05)) < 1e-15);
    CHECK_THROWS_AS((Disc{{0.55, 0.0}, 0.1}).validate(), ConfigError);
    CHECK_THROWS_AS((Disc{{0.75, 0.0}, 0.0}).validate(), ConfigError);
  }

  TEST_CASE("twisted factor") {
    ComplexPoint s{0.75, 0.2};
    Complex want = -std::log(1.0 - unit_turn(-0.3) * std::pow(3.0, -s));
    CHECK(std::abs(twisted_factor(3, 0.3, s) - want) < 1e-15);
    CHECK(std::abs(unit_turn(0.25) - Complex(0, 1)) < 1e-15);
  }

  TEST_CASE("round trip of synthesized products") {
    const std::vector<std::uint32_t> pool{2, 3, 5, 7, 11};
    Disc disc{{0.75, 0.0}, 0.1};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      AngleAssignment truth;
      const std::size_t m = 1 + trial % 5;
      truth.primes.assign(pool.begin(), pool.begin() + m);
      for (std::size_t i = 0; i < m; ++i) truth.theta.push_back(u(rng));
      truth.floor_y = truth.primes.back();
      FitBudget budget;
      budget.seed = 100 + trial;
      budget.restarts = 64;
      auto res = fit_log_target(synthesize(truth, disc, 64), disc, 1e-6,
                                truth.floor_y, budget);
      CHECK(res.converged);
      CHECK(res.sup_error < 1e-6);
      REQUIRE(res.assignment.size() == m);
      for (std::size_t i = 0; i < m; ++i)
        CHECK(circle_distance(res.assignment.theta[i] - truth.theta[i]) < 1e-4);
    }
  }

  TEST_CASE("fixed seed is deterministic") {
    Disc disc{{0.8, 0.0}, 0.05};
    auto f = Expression::parse("1 + s / 4");
    FitBudget budget;
    budget.seed = 7;
    budget.max_primes = 20;
    auto a = fit_angles(f, disc, 0.05, 0.0, budget);
    auto b = fit_angles(f, disc, 0.05, 0.0, budget);
    CHECK(a.assignment.primes == b.assignment.primes);
    CHECK(a.assignment.theta == b.assignment.theta);
    CHECK(a.sup_error == b.sup_error);
  }

  TEST_CASE("floor_y forces every small prime into M") {
    Disc disc{{0.8, 0.0}, 0.05};
    auto f = Expression::parse("1.2");
    auto res = fit_angles(f, disc, 0.5, 20.0);
    std::vector<std::uint32_t> want{2, 3, 5, 7, 11, 13, 17, 19};
    REQUIRE(res.assignment.size() >= want.size());
    CHECK(std::vector<std::uint32_t>(res.assignment.primes.begin(),
                                     res.assignment.primes.begin() + 8) == want);
  }

  TEST_CASE("assignment file round trip") {
    AngleAssignment a;
    a.primes = {2, 3, 5, 11};
    a.theta = {0.125, 0.5, 0.9999999999999, 0.0};
    std::stringstream io;
    write_assignment(io, a);
    auto b = read_assignment(io);
    CHECK(b.primes == a.primes);
    CHECK(b.theta == a.theta);
    CHECK(b.floor_y == 5.0);

    std::istringstream with_comments("# fitted\n\n2 0.1\n3 0.2\n");
    CHECK(read_assignment(with_comments).size() == 2);
  }

  TEST_CASE("malformed assignment files") {
    auto line_of = [](const char* text) -> std::size_t {
      std::istringstream in(text);
      try {
        read_assignment(in);
      } catch (const ParseError& e) {
        return e.where();
      }
      return 0;
    };
    CHECK(line_of("2 0.1\n3 oops\n") == 2);
    CHECK(line_of("3 0.1\n2 0.2\n") == 2);
    CHECK(line_of("4 0.1\n") == 1);
    CHECK(line_of("2 1.5\n") == 1);
  }

  TEST_CASE("zero target is rejected") {
    Disc disc{{0.75, 0.0}, 0.1};
    auto f = Expression::parse("0 * s");
    CHECK_THROWS_AS(fit_angles(f, disc, 0.1, 0.0), ZeroTargetError);
  }

  TEST_CASE("boundary sample floor") {
    AngleAssignment a;
    Disc disc;
    std::vector<Complex> g(8, 0.0);
    CHECK_THROWS_AS(sup_error(g, a, disc, 8), ConfigError);
  }
}
