#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aclsd/error.hpp"
#include "aclsd/stats.hpp"
#include "aclsd/theory.hpp"

using namespace aclsd;

TEST_CASE("empirical cdf is right-continuous") {
  const stats::EmpiricalCdf f({0.0, 1.0, 1.0, 2.0});
  CHECK(f(-1.0) == 0.0);
  CHECK(f(0.0) == 0.25);
  CHECK(f.left(1.0) == 0.25);
  CHECK(f(1.0) == 0.75);
  CHECK(f(5.0) == 1.0);
}

TEST_CASE("ks of exact quantiles is at most 1/n") {
  const std::size_t n = 200;
  std::vector<double> q;
  for (std::size_t i = 1; i <= n; ++i) q.push_back(std::cos(std::numbers::pi * (1.0 - (i - 0.5) / n)));
  CHECK(stats::ks_distance(q, theory::arcsine_cdf).statistic <= 1.0 / n);
}

TEST_CASE("ks of a constant sample against the arcsine law") {
  const std::vector<double> s = {0.0, 0.0, 0.0};
  const auto r = stats::ks_distance(s, theory::arcsine_cdf);
  CHECK(r.statistic == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.location == 0.0);
  CHECK(r.n == 3);
}

TEST_CASE("ks of a uniform sample") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(10000);
  for (auto& v : s) v = u(gen);
  std::sort(s.begin(), s.end());
  CHECK(stats::ks_distance(s, [](double x) { return std::clamp(x, 0.0, 1.0); }).statistic <= 0.02);
}

TEST_CASE("ks is shift equivariant") {
  std::vector<double> s = {-0.9, -0.3, 0.1, 0.2, 0.75};
  const double base = stats::ks_distance(s, theory::arcsine_cdf).statistic;
  for (auto& v : s) v += 2.5;
  const double moved = stats::ks_distance(s, [](double x) { return theory::arcsine_cdf(x - 2.5); }).statistic;
  CHECK(moved == doctest::Approx(base).epsilon(1e-14));
}

TEST_CASE("declared atoms give exact left limits") {
  // half uniform on (-1, 1), half point mass at 0
  auto mix = [](double x) { return 0.5 * std::clamp((x + 1.0) / 2.0, 0.0, 1.0) + (x >= 0.0 ? 0.5 : 0.0); };
  const std::vector<double> s = {0.0, 0.0, 0.0, 0.0};
  CHECK(stats::ks_distance(s, stats::ReferenceCdf{mix, {{0.0, 0.5}}}).statistic == doctest::Approx(0.25));
  // without the declaration the jump is invisible to the left limit
  CHECK(stats::ks_distance(s, stats::ReferenceCdf{mix, {}}).statistic == doctest::Approx(0.75));
}

TEST_CASE("ks input validation") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(stats::ks_distance(empty, theory::arcsine_cdf), InvalidInput);
  const std::vector<double> unsorted = {1.0, 0.0};
  CHECK_THROWS_AS(stats::ks_distance(unsorted, theory::arcsine_cdf), InvalidInput);
}

TEST_CASE("two-sample ks") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> b = {1.0, 2.0, 3.0, 4.0};
  CHECK(stats::ks_two_sample(a, b).statistic == 0.0);
  const std::vector<double> c = {5.0, 6.0};
  CHECK(stats::ks_two_sample(a, c).statistic == 1.0);
  const std::vector<double> d = {2.5};
  CHECK(stats::ks_two_sample(a, d).statistic == doctest::Approx(0.5));
}

TEST_CASE("quad on smooth integrands") {
  CHECK(std::abs(stats::quad([](double x) { return x * x; }, 0.0, 1.0, 1e-13) - 1.0 / 3.0) <= 1e-12);
  CHECK(stats::quad([](double x) { return x; }, 2.0, 2.0, 1e-12) == 0.0);
  auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
  const double whole = stats::quad(f, 0.0, 4.0, 1e-10);
  CHECK(std::abs(whole - (stats::quad(f, 0.0, 2.2, 1e-10) + stats::quad(f, 2.2, 4.0, 1e-10))) <= 2e-10);
}

TEST_CASE("arcsine quadrature") {
  CHECK(std::abs(stats::quad_arcsine([](double) { return 1.0; }, 1e-12) - 1.0) <= 1e-10);
  const double u = 0.5;
  const double v = stats::quad_arcsine([u](double t) { return t / (1.0 + u * t); }, 1e-12);
  CHECK(std::abs(v - 2.0 * (1.0 - 2.0 / std::sqrt(3.0))) <= 1e-10);
  CHECK(v == doctest::Approx(-0.309401).epsilon(1e-5));
}

TEST_CASE("quad reports exhaustion with an estimate") {
  // oscillation far beyond what the depth limit can resolve
  auto f = [](double x) { return std::sin(1e9 * x * x); };
  try {
    stats::quad(f, 0.0, 1.0, 1e-15);
    CHECK(false);
  } catch (const AccuracyFailure& e) {
    CHECK(std::isfinite(e.best_estimate()));
  }
}
