#include "aclsd/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aclsd/error.hpp"

namespace aclsd {

HermitianMatrix::HermitianMatrix(std::size_t n, bool complex_valued)
    : n_(n), re_(n * n, 0.0), im_(complex_valued ? n * n : 0, 0.0) {}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix m(n, false);
  for (std::size_t i = 0; i < n; ++i) m.re_[i * n + i] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::from_real(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) throw DimensionMismatch("from_real: expected n*n values");
  HermitianMatrix m;
  m.n_ = n;
  m.re_ = std::move(values);
  return m;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, std::complex<double> v) {
  re_[i * n_ + j] = v.real();
  if (!im_.empty()) {
    im_[i * n_ + j] = v.imag();
  } else if (v.imag() != 0.0) {
    throw ContractViolation("complex value written into a real matrix");
  }
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += re_[i * n_ + i];
  return t;
}

double HermitianMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

double HermitianMatrix::max_abs() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    const double im = im_.empty() ? 0.0 : im_[i];
    worst = std::max(worst, std::hypot(re_[i], im));
  }
  return worst;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return d;
  if (static_cast<int>(e.size()) != n - 1) throw DimensionMismatch("off-diagonal must have n-1 entries");
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  // Dropping an off-diagonal below eps * ||T|| is a backward-stable
  // perturbation; without this floor, clusters of eigenvalues near zero (rank
  // deficient inputs) never satisfy the relative test.
  double norm = 0.0;
  for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0));
  const double floor = eps * norm;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m == l) break;
      if (++iter > 100) throw AccuracyFailure("implicit QL did not converge", d[l]);

      // Wilkinson-type shift from the leading 2x2 block
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

Tridiagonal tridiagonalize_real(HermitianMatrix& a, const kernels::KernelTable& k) {
  const std::size_t n = a.dim();
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n > 0 ? n - 1 : 0)};
  std::vector<double> v(n), p(n), w(n);

  for (std::size_t col = 0; col + 1 < n; ++col) {
    const std::size_t m = n - col - 1;
    const std::size_t off = col + 1;
    const double* x = a.re_row(col) + off;  // column below the diagonal, by symmetry
    t.diag[col] = a.re_row(col)[col];

    const double alpha = x[0];
    double xnorm = 0.0;
    for (std::size_t i = 1; i < m; ++i) xnorm = std::hypot(xnorm, x[i]);
    if (xnorm == 0.0) {
      t.off[col] = alpha;
      continue;
    }
    const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
    const double tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    v[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) v[i] = x[i] * scale;
    t.off[col] = beta;

    for (std::size_t i = 0; i < m; ++i) p[i] = tau * k.ddot(a.re_row(off + i) + off, v.data(), m);
    const double gamma = 0.5 * tau * k.ddot(v.data(), p.data(), m);
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - gamma * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      k.dsyr2_row(a.re_row(off + i) + off, w[i], v.data(), v[i], w.data(), m);
    }
  }
  if (n > 0) t.diag[n - 1] = a.re_row(n - 1)[n - 1];
  return t;
}

Tridiagonal tridiagonalize_complex(HermitianMatrix& a, const kernels::KernelTable& k) {
  using cplx = std::complex<double>;
  const std::size_t n = a.dim();
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n > 0 ? n - 1 : 0)};
  std::vector<double> vr(n), vi(n), pr(n), pi(n), wr(n), wi(n);

  for (std::size_t col = 0; col + 1 < n; ++col) {
    const std::size_t m = n - col - 1;
    const std::size_t off = col + 1;
    // A[i][col] = conj(A[col][i])
    const double* xr = a.re_row(col) + off;
    const double* xi_neg = a.im_row(col) + off;
    t.diag[col] = a.re_row(col)[col];

    const cplx alpha(xr[0], -xi_neg[0]);
    double xnorm = 0.0;
    for (std::size_t i = 1; i < m; ++i) xnorm = std::hypot(xnorm, std::hypot(xr[i], xi_neg[i]));
    if (xnorm == 0.0 && alpha.imag() == 0.0) {
      t.off[col] = alpha.real();
      continue;
    }
    const double beta = -std::copysign(std::hypot(std::abs(alpha), xnorm), alpha.real());
    const cplx tau = (beta - alpha) / beta;
    const cplx scale = 1.0 / (alpha - beta);
    vr[0] = 1.0;
    vi[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const cplx vv = cplx(xr[i], -xi_neg[i]) * scale;
      vr[i] = vv.real();
      vi[i] = vv.imag();
    }
    t.off[col] = beta;

    // p = tau * B v
    for (std::size_t i = 0; i < m; ++i) {
      const cplx bv = k.zdotu(a.re_row(off + i) + off, a.im_row(off + i) + off, vr.data(), vi.data(), m);
      const cplx pv = tau * bv;
      pr[i] = pv.real();
      pi[i] = pv.imag();
    }
    // w = p - (1/2) conj(tau) (v^H p) v; the scalar is real for Hermitian B
    const cplx vhp = k.zdotc(pr.data(), pi.data(), vr.data(), vi.data(), m);
    const double gamma = 0.5 * (std::conj(tau) * vhp).real();
    for (std::size_t i = 0; i < m; ++i) {
      wr[i] = pr[i] - gamma * vr[i];
      wi[i] = pi[i] - gamma * vi[i];
    }
    // B -= w v^H + v w^H
    for (std::size_t i = 0; i < m; ++i) {
      k.zher2_row(a.re_row(off + i) + off, a.im_row(off + i) + off, cplx(wr[i], wi[i]), vr.data(), vi.data(),
                  cplx(vr[i], vi[i]), wr.data(), wi.data(), m);
    }
  }
  if (n > 0) t.diag[n - 1] = a.re_row(n - 1)[n - 1];
  return t;
}

}  // namespace

Tridiagonal tridiagonalize(HermitianMatrix a, const kernels::KernelTable* k) {
  const auto& table = kernels::resolve(k);
  return a.is_complex() ? tridiagonalize_complex(a, table) : tridiagonalize_real(a, table);
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& a, const kernels::KernelTable* k) {
  const double tol = 1e-10 * std::max(1.0, a.max_abs());
  if (a.hermitian_defect() > tol) {
    throw ContractViolation("hermitian_eigenvalues: input is not Hermitian");
  }
  auto t = tridiagonalize(a, k);
  return tridiagonal_eigenvalues(std::move(t.diag), std::move(t.off));
}

}  // namespace aclsd
