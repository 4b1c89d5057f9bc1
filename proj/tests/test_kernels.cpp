#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "aclsd/kernels.hpp"

using namespace aclsd;

namespace {

std::vector<double> random_vec(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(gen);
  return v;
}

double abs_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
  return s;
}

}  // namespace

TEST_CASE("scalar backend is always available and first") {
  const auto all = kernels::available_kernels();
  REQUIRE(!all.empty());
  CHECK(all.front()->backend == kernels::Backend::Scalar);
  CHECK(&kernels::resolve(nullptr) == &kernels::active_kernels());
}

TEST_CASE("backends agree with the scalar reference") {
  const auto& ref = kernels::scalar_kernels();
  std::mt19937_64 gen(17);
  for (const auto* k : kernels::available_kernels()) {
    CAPTURE(k->name);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 67, 1001}) {
      CAPTURE(n);
      const auto ar = random_vec(gen, n), ai = random_vec(gen, n);
      const auto br = random_vec(gen, n), bi = random_vec(gen, n);
      const double tol = 1e-14 * (1.0 + abs_sum(ar, br) + abs_sum(ai, bi) + abs_sum(ar, bi) + abs_sum(ai, br));

      CHECK(std::abs(k->ddot(ar.data(), br.data(), n) - ref.ddot(ar.data(), br.data(), n)) <= tol);
      CHECK(std::abs(k->zdotc(ar.data(), ai.data(), br.data(), bi.data(), n) -
                     ref.zdotc(ar.data(), ai.data(), br.data(), bi.data(), n)) <= tol);
      CHECK(std::abs(k->zdotu(ar.data(), ai.data(), br.data(), bi.data(), n) -
                     ref.zdotu(ar.data(), ai.data(), br.data(), bi.data(), n)) <= tol);

      auto r1 = random_vec(gen, n);
      auto r2 = r1;
      k->dsyr2_row(r1.data(), 0.7, ar.data(), -1.3, br.data(), n);
      ref.dsyr2_row(r2.data(), 0.7, ar.data(), -1.3, br.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r1[i] - r2[i]) <= 1e-14 * (1.0 + std::abs(r2[i])) * 4.0);

      auto rr1 = random_vec(gen, n), ri1 = random_vec(gen, n);
      auto rr2 = rr1, ri2 = ri1;
      const std::complex<double> alpha(0.3, -1.1), beta(-0.8, 0.25);
      k->zher2_row(rr1.data(), ri1.data(), alpha, ar.data(), ai.data(), beta, br.data(), bi.data(), n);
      ref.zher2_row(rr2.data(), ri2.data(), alpha, ar.data(), ai.data(), beta, br.data(), bi.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(rr1[i] - rr2[i]) <= 1e-14 * 8.0 * (1.0 + std::abs(rr2[i])));
        CHECK(std::abs(ri1[i] - ri2[i]) <= 1e-14 * 8.0 * (1.0 + std::abs(ri2[i])));
      }
    }
  }
}

TEST_CASE("scalar kernels compute the documented quantities") {
  const auto& k = kernels::scalar_kernels();
  const double ar[] = {1.0, 2.0}, ai[] = {0.5, -1.0};
  const double br[] = {3.0, -1.0}, bi[] = {2.0, 0.0};
  const std::complex<double> a0(1.0, 0.5), a1(2.0, -1.0), b0(3.0, 2.0), b1(-1.0, 0.0);
  CHECK(std::abs(k.zdotc(ar, ai, br, bi, 2) - (a0 * std::conj(b0) + a1 * std::conj(b1))) < 1e-15);
  CHECK(std::abs(k.zdotu(ar, ai, br, bi, 2) - (a0 * b0 + a1 * b1)) < 1e-15);
  CHECK(k.ddot(ar, br, 2) == 1.0);

  double rr[] = {0.0, 0.0}, ri[] = {0.0, 0.0};
  const std::complex<double> alpha(1.0, 1.0), beta(0.0, 2.0);
  k.zher2_row(rr, ri, alpha, ar, ai, beta, br, bi, 2);
  const std::complex<double> want0 = -(alpha * std::conj(a0) + beta * std::conj(b0));
  CHECK(std::abs(std::complex<double>(rr[0], ri[0]) - want0) < 1e-15);
}
