#include <doctest.h>

#include <cmath>
#include <random>

#include "aclsd/error.hpp"
#include "aclsd/oracles.hpp"
#include "aclsd/roots.hpp"

using namespace aclsd;
using roots::Cubic;

TEST_CASE("cubic with a double root") {
  const auto r = roots::solve_cubic(Cubic{1, 1, -1, -1});
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r[0].multiplicity == 2);
  CHECK(r[1].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[1].multiplicity == 1);
}

TEST_CASE("cubic with a triple root at zero") {
  const auto r = roots::solve_cubic(Cubic{1, 0, 0, 0});
  REQUIRE(r.size() == 1);
  CHECK(r[0].value == 0.0);
  CHECK(r[0].multiplicity == 3);
}

TEST_CASE("triple root away from zero") {
  // (y - 2)^3
  const auto r = roots::solve_cubic(Cubic{1, -6, 12, -8});
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 3);
  CHECK(r[0].value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("largest root of y^3 - 4y - 4 matches bisection") {
  const Cubic p{1, 0, -4, -4};
  const auto r = roots::solve_cubic(p);
  const auto scan = oracles::cubic_roots_scan(p);
  REQUIRE(!scan.empty());
  CHECK(std::abs(r.back().value - scan.back()) <= 1e-12);
  CHECK(r.back().value == doctest::Approx(2.38298).epsilon(1e-5));
}

TEST_CASE("solver residuals stay within the coefficient scale") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    Cubic p{u(gen), u(gen), u(gen), u(gen)};
    if (std::abs(p.a3) < 1e-3) continue;
    const auto r = roots::solve_cubic(p);
    int total = 0;
    for (const auto& root : r) {
      total += root.multiplicity;
      CHECK(std::abs(p(root.value)) <= 1e-10 * p.scale() * std::max(1.0, std::pow(std::abs(root.value), 3)));
    }
    CHECK((total == 1 || total == 3));
  }
}

TEST_CASE("roots of widely different scale") {
  // roots 1e-9, 2e-9, -3e-9
  const double s = 1e-9;
  const Cubic p{1.0, 0.0, -7.0 * s * s, 6.0 * s * s * s};
  const auto r = roots::solve_cubic(p);
  REQUIRE(r.size() == 3);
  CHECK(r[0].value == doctest::Approx(-3e-9).epsilon(1e-10));
  CHECK(r[1].value == doctest::Approx(1e-9).epsilon(1e-10));
  CHECK(r[2].value == doctest::Approx(2e-9).epsilon(1e-10));
}

TEST_CASE("non-finite coefficients are rejected") {
  CHECK_THROWS_AS(roots::solve_cubic(Cubic{1, NAN, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(roots::solve_cubic(Cubic{0, 1, 0, 0}), InvalidInput);
}

TEST_CASE("y0 examples") {
  CHECK(roots::y0(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(roots::y0(1.0, 2.0) == doctest::Approx(2.38298).epsilon(1e-5));
  for (double x : {0.3, 1.1, 2.7}) {
    for (double c : {0.4, 1.0, 2.2}) CHECK(roots::y0(x, c) == roots::y0(-x, c));
  }
  CHECK_THROWS_AS(roots::y0(0.0, 1.0), DomainError);
}

TEST_CASE("scaled root stays accurate near the origin at c = 1") {
  // t = 2|x| + O(x^2) when c = 1
  for (double x : {1e-6, 1e-9, 1e-12, 1e-15}) {
    CHECK(roots::scaled_y0(x, 1.0) == doctest::Approx(2.0 * x).epsilon(1e-6));
  }
}

TEST_CASE("y1 examples and location") {
  CHECK(std::abs(roots::y1(2.0) - 0.5 * (std::sqrt(5.0) - 1.0)) <= 1e-12);
  CHECK(roots::y1(0.5) == doctest::Approx(1.6519).epsilon(1e-4));
  CHECK(roots::y1(2.0) > 0.0);
  CHECK(roots::y1(2.0) < 1.0);
  CHECK(roots::y1(0.5) > 1.0);
  for (double c : {0.1, 0.3, 0.9, 1.3, 2.5, 3.0}) {
    const double y = roots::y1(c);
    CHECK((c < 1.0 ? y > 1.0 : (y > 0.0 && y < 1.0)));
  }
  CHECK_THROWS_AS(roots::y1(1.0), DegenerateCoefficient);
}

TEST_CASE("support endpoint") {
  CHECK(roots::support_endpoint(1.0) == 2.0);
  CHECK(roots::support_endpoint(1.0 + 5e-9) == 2.0);
  CHECK(roots::support_endpoint(2.0) == doctest::Approx(3.3302).epsilon(1e-4));
  CHECK(roots::support_endpoint(0.5) == doctest::Approx(1.2490).epsilon(1e-4));
  CHECK_THROWS_AS(roots::support_endpoint(0.0), InvalidInput);
  CHECK_THROWS_AS(roots::support_endpoint(-1.0), InvalidInput);
}

TEST_CASE("support solution bundles the roots") {
  const auto s = roots::support_solution(1.0, 2.0);
  CHECK(s.y0 == doctest::Approx(2.38298).epsilon(1e-5));
  CHECK(s.a == doctest::Approx(3.3302).epsilon(1e-4));
  CHECK(std::isnan(roots::support_solution(1.0, 1.0).y1));
}
