#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "aclsd/kernels.hpp"

namespace aclsd {

// Dense n x n Hermitian matrix, full storage, row-major, split real and
// imaginary planes. A real symmetric matrix has an empty imaginary plane.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  HermitianMatrix(std::size_t n, bool complex_valued);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix from_real(std::size_t n, std::vector<double> values);

  std::size_t dim() const { return n_; }
  bool is_complex() const { return !im_.empty(); }

  std::complex<double> at(std::size_t i, std::size_t j) const {
    return {re_[i * n_ + j], im_.empty() ? 0.0 : im_[i * n_ + j]};
  }
  void set(std::size_t i, std::size_t j, std::complex<double> v);

  double* re_row(std::size_t i) { return re_.data() + i * n_; }
  double* im_row(std::size_t i) { return im_.data() + i * n_; }
  const double* re_row(std::size_t i) const { return re_.data() + i * n_; }
  const double* im_row(std::size_t i) const { return im_.data() + i * n_; }
  const std::vector<double>& re() const { return re_; }
  const std::vector<double>& im() const { return im_; }

  double trace() const;
  // max_{i,j} |A_ij - conj(A_ji)|
  double hermitian_defect() const;
  double max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Eigenvalues of the real symmetric tridiagonal matrix with diagonal `diag`
// and off-diagonal `off` (off[i] couples i and i+1), by implicit-shift QL.
// Returned ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// Householder reduction to real symmetric tridiagonal form (unitary
// similarity, so the spectrum is preserved).
Tridiagonal tridiagonalize(HermitianMatrix a, const kernels::KernelTable* k = nullptr);

// All eigenvalues, ascending. Throws ContractViolation when the input is not
// Hermitian to within 1e-10 * max(1, max |A_ij|).
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& a, const kernels::KernelTable* k = nullptr);

}  // namespace aclsd
