#include "aclsd/kernels.hpp"

namespace aclsd::kernels {
namespace {

double ddot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
  return s;
}

void dsyr2_row(double* r, double alpha, const double* x, double beta, const double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) r[j] -= alpha * x[j] + beta * y[j];
}

std::complex<double> zdotc(const double* are, const double* aim, const double* bre, const double* bim,
                           std::size_t n) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sr += are[j] * bre[j] + aim[j] * bim[j];
    si += aim[j] * bre[j] - are[j] * bim[j];
  }
  return {sr, si};
}

std::complex<double> zdotu(const double* are, const double* aim, const double* bre, const double* bim,
                           std::size_t n) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sr += are[j] * bre[j] - aim[j] * bim[j];
    si += are[j] * bim[j] + aim[j] * bre[j];
  }
  return {sr, si};
}

void zher2_row(double* rre, double* rim, std::complex<double> alpha, const double* xre, const double* xim,
               std::complex<double> beta, const double* yre, const double* yim, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  for (std::size_t j = 0; j < n; ++j) {
    rre[j] -= ar * xre[j] + ai * xim[j] + br * yre[j] + bi * yim[j];
    rim[j] -= ai * xre[j] - ar * xim[j] + bi * yre[j] - br * yim[j];
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::Scalar, "scalar", ddot, dsyr2_row, zdotc, zdotu, zher2_row};
  return table;
}

}  // namespace aclsd::kernels
