#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aclsd/error.hpp"
#include "aclsd/hermitian.hpp"
#include "aclsd/kernels.hpp"

using namespace aclsd;

namespace {

HermitianMatrix random_hermitian(std::size_t n, bool complex_valued, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  HermitianMatrix a(n, complex_valued);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, g(gen));
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::complex<double> v(g(gen), complex_valued ? g(gen) : 0.0);
      a.set(i, j, v);
      a.set(j, i, std::conj(v));
    }
  }
  return a;
}

std::vector<double> eigen_reference(const HermitianMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a.at(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("identity spectrum") {
  const auto v = hermitian_eigenvalues(HermitianMatrix::identity(5));
  REQUIRE(v.size() == 5);
  for (double x : v) CHECK(x == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tridiagonal QL on a path graph") {
  const std::size_t n = 10;
  const auto v = tridiagonal_eigenvalues(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.5));
  for (std::size_t k = 1; k <= n; ++k) {
    CHECK(std::abs(v[n - k] - std::cos(k * std::numbers::pi / (n + 1))) <= 1e-14);
  }
}

TEST_CASE("QL with a cluster of zero eigenvalues") {
  // rank-one matrix: n - 1 zeros
  const std::size_t n = 60;
  std::vector<double> vals(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) vals[i * n + j] = 1.0 / n;
  }
  const auto v = hermitian_eigenvalues(HermitianMatrix::from_real(n, vals));
  CHECK(v.back() == doctest::Approx(1.0).epsilon(1e-13));
  for (std::size_t i = 0; i + 1 < n; ++i) CHECK(std::abs(v[i]) <= 1e-13);
}

TEST_CASE("dense eigenvalues match Eigen") {
  for (bool cplx : {false, true}) {
    for (std::size_t n : {1, 2, 3, 17, 64, 150}) {
      CAPTURE(n);
      CAPTURE(cplx);
      const auto a = random_hermitian(n, cplx, 1000 + n);
      const auto want = eigen_reference(a);
      for (const auto* k : kernels::available_kernels()) {
        const auto got = hermitian_eigenvalues(a, k);
        REQUIRE(got.size() == n);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(got[i] - want[i]));
        CHECK(err <= 1e-11 * std::sqrt(static_cast<double>(n)) * 4.0);
      }
    }
  }
}

TEST_CASE("eigenvalue sum equals trace") {
  const auto a = random_hermitian(50, true, 5);
  const auto v = hermitian_eigenvalues(a);
  double s = 0.0;
  for (double x : v) s += x;
  CHECK(std::abs(s - a.trace()) <= 1e-9);
}

TEST_CASE("tridiagonalization preserves the spectrum under every backend") {
  const auto a = random_hermitian(40, true, 77);
  const auto ref = hermitian_eigenvalues(a, &kernels::scalar_kernels());
  for (const auto* k : kernels::available_kernels()) {
    const auto t = tridiagonalize(a, k);
    const auto v = tridiagonal_eigenvalues(t.diag, t.off);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - ref[i]) <= 1e-12);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  HermitianMatrix a(3, true);
  a.set(0, 1, {1.0, 1.0});
  a.set(1, 0, {1.0, 1.0});
  CHECK(a.hermitian_defect() == doctest::Approx(2.0));
  CHECK_THROWS_AS(hermitian_eigenvalues(a), ContractViolation);
}
