#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

// Inner loops of the Gram/product constructions and of Householder
// tridiagonalization. Complex vectors use split storage: separate real and
// imaginary arrays of equal length.
//
// Every backend computes the same quantities; only the summation order
// differs, so backends agree to rounding but not bitwise. The active backend
// is chosen once per process from the CPU feature set.
namespace aclsd::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  std::string_view name;

  // sum_j a_j * b_j
  double (*ddot)(const double* a, const double* b, std::size_t n);
  // r_j -= alpha * x_j + beta * y_j
  void (*dsyr2_row)(double* r, double alpha, const double* x, double beta, const double* y, std::size_t n);
  // sum_j a_j * conj(b_j)
  std::complex<double> (*zdotc)(const double* are, const double* aim, const double* bre, const double* bim,
                                std::size_t n);
  // sum_j a_j * b_j
  std::complex<double> (*zdotu)(const double* are, const double* aim, const double* bre, const double* bim,
                                std::size_t n);
  // r_j -= alpha * conj(x_j) + beta * conj(y_j)
  void (*zher2_row)(double* rre, double* rim, std::complex<double> alpha, const double* xre, const double* xim,
                    std::complex<double> beta, const double* yre, const double* yim, std::size_t n);
};

const KernelTable& scalar_kernels();

// Backends compiled in and supported by the running CPU; scalar is always first.
std::vector<const KernelTable*> available_kernels();

// Fastest available backend.
const KernelTable& active_kernels();

// nullptr selects the active backend.
inline const KernelTable& resolve(const KernelTable* k) { return k ? *k : active_kernels(); }

}  // namespace aclsd::kernels
