#include <immintrin.h>

#include "aclsd/kernels.hpp"

namespace aclsd::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double ddot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), acc1);
  }
  for (; j + 4 <= n; j += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

void dsyr2_row(double* r, double alpha, const double* x, double beta, const double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d vr = _mm256_loadu_pd(r + j);
    vr = _mm256_fnmadd_pd(va, _mm256_loadu_pd(x + j), vr);
    vr = _mm256_fnmadd_pd(vb, _mm256_loadu_pd(y + j), vr);
    _mm256_storeu_pd(r + j, vr);
  }
  for (; j < n; ++j) r[j] -= alpha * x[j] + beta * y[j];
}

std::complex<double> zdotc(const double* are, const double* aim, const double* bre, const double* bim,
                           std::size_t n) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ar = _mm256_loadu_pd(are + j);
    const __m256d ai = _mm256_loadu_pd(aim + j);
    const __m256d br = _mm256_loadu_pd(bre + j);
    const __m256d bi = _mm256_loadu_pd(bim + j);
    sr = _mm256_fmadd_pd(ar, br, sr);
    sr = _mm256_fmadd_pd(ai, bi, sr);
    si = _mm256_fmadd_pd(ai, br, si);
    si = _mm256_fnmadd_pd(ar, bi, si);
  }
  double rr = hsum(sr);
  double ri = hsum(si);
  for (; j < n; ++j) {
    rr += are[j] * bre[j] + aim[j] * bim[j];
    ri += aim[j] * bre[j] - are[j] * bim[j];
  }
  return {rr, ri};
}

std::complex<double> zdotu(const double* are, const double* aim, const double* bre, const double* bim,
                           std::size_t n) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d ar = _mm256_loadu_pd(are + j);
    const __m256d ai = _mm256_loadu_pd(aim + j);
    const __m256d br = _mm256_loadu_pd(bre + j);
    const __m256d bi = _mm256_loadu_pd(bim + j);
    sr = _mm256_fmadd_pd(ar, br, sr);
    sr = _mm256_fnmadd_pd(ai, bi, sr);
    si = _mm256_fmadd_pd(ar, bi, si);
    si = _mm256_fmadd_pd(ai, br, si);
  }
  double rr = hsum(sr);
  double ri = hsum(si);
  for (; j < n; ++j) {
    rr += are[j] * bre[j] - aim[j] * bim[j];
    ri += are[j] * bim[j] + aim[j] * bre[j];
  }
  return {rr, ri};
}

void zher2_row(double* rre, double* rim, std::complex<double> alpha, const double* xre, const double* xim,
               std::complex<double> beta, const double* yre, const double* yim, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set1_pd(ai);
  const __m256d vbr = _mm256_set1_pd(br);
  const __m256d vbi = _mm256_set1_pd(bi);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d x_r = _mm256_loadu_pd(xre + j);
    const __m256d x_i = _mm256_loadu_pd(xim + j);
    const __m256d y_r = _mm256_loadu_pd(yre + j);
    const __m256d y_i = _mm256_loadu_pd(yim + j);
    __m256d r_r = _mm256_loadu_pd(rre + j);
    __m256d r_i = _mm256_loadu_pd(rim + j);
    r_r = _mm256_fnmadd_pd(var, x_r, r_r);
    r_r = _mm256_fnmadd_pd(vai, x_i, r_r);
    r_r = _mm256_fnmadd_pd(vbr, y_r, r_r);
    r_r = _mm256_fnmadd_pd(vbi, y_i, r_r);
    r_i = _mm256_fnmadd_pd(vai, x_r, r_i);
    r_i = _mm256_fmadd_pd(var, x_i, r_i);
    r_i = _mm256_fnmadd_pd(vbi, y_r, r_i);
    r_i = _mm256_fmadd_pd(vbr, y_i, r_i);
    _mm256_storeu_pd(rre + j, r_r);
    _mm256_storeu_pd(rim + j, r_i);
  }
  for (; j < n; ++j) {
    rre[j] -= ar * xre[j] + ai * xim[j] + br * yre[j] + bi * yim[j];
    rim[j] -= ai * xre[j] - ar * xim[j] + bi * yre[j] - br * yim[j];
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Backend::Avx2, "avx2", ddot, dsyr2_row, zdotc, zdotu, zher2_row};
  return table;
}

}  // namespace aclsd::kernels
