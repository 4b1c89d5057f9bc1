#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aclsd/hermitian.hpp"
#include "aclsd/kernels.hpp"

namespace aclsd::ensemble {

// The n x n matrix with 1/2 on the two bands at distance tau from the
// diagonal (tau >= 1). tau = 0 is taken to mean the identity.
class BandMatrix {
 public:
  BandMatrix(std::size_t n, std::size_t tau);

  std::size_t dim() const { return n_; }
  std::size_t tau() const { return tau_; }
  double entry(std::size_t i, std::size_t j) const;
  HermitianMatrix dense() const;

 private:
  std::size_t n_;
  std::size_t tau_;
};

BandMatrix build_c(std::size_t n, std::size_t tau);

// Sorted real spectrum plus a short provenance string.
struct SpectrumSample {
  std::vector<double> values;
  std::string provenance;

  std::size_t size() const { return values.size(); }
};

// Exact spectrum of C_{n,tau}: the indices split into tau residue classes
// mod tau, each a path graph with weights 1/2, so the spectrum is the union
// of cos(k pi / (m_r + 1)), k = 1..m_r, over class sizes m_r.
SpectrumSample c_spectrum_closed(std::size_t n, std::size_t tau);

// tau - 1 zeros plus cos(k pi / (n - tau + 2)), k = 1..n-tau+1: the spectrum
// of a single chain padded with zeros. Coincides with c_spectrum_closed only
// at tau = 1.
std::vector<double> c_spectrum_single_chain(std::size_t n, std::size_t tau);

enum class EntryKind { ComplexGaussian, RealGaussian, Rademacher, ParetoSymmetric };

struct EntryDistribution {
  EntryKind kind = EntryKind::ComplexGaussian;
  double alpha = 0.0;  // tail index, ParetoSymmetric only

  // "complex-gaussian", "real-gaussian", "rademacher", "pareto-symmetric(2.1)"
  std::string name() const;
  static EntryDistribution parse(const std::string& text);
  bool is_complex() const { return kind == EntryKind::ComplexGaussian; }
  // Throws InvalidInput for alpha <= 2.
  void validate() const;
};

// N x (T + tau) matrix of i.i.d. standardized entries, rows contiguous.
// Column k is the observation e_{k+1}.
class DataMatrix {
 public:
  DataMatrix(std::size_t rows, std::size_t cols, bool complex_valued);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_complex() const { return !im_.empty(); }
  std::complex<double> at(std::size_t i, std::size_t j) const {
    return {re_[i * cols_ + j], im_.empty() ? 0.0 : im_[i * cols_ + j]};
  }
  void set(std::size_t i, std::size_t j, std::complex<double> v);

  const double* re_row(std::size_t i) const { return re_.data() + i * cols_; }
  const double* im_row(std::size_t i) const { return im_.data() + i * cols_; }
  double* re_row(std::size_t i) { return re_.data() + i * cols_; }
  double* im_row(std::size_t i) { return im_.data() + i * cols_; }
  const std::vector<double>& re() const { return re_; }
  const std::vector<double>& im() const { return im_; }

  std::uint64_t seed = 0;
  EntryDistribution dist;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> re_;
  std::vector<double> im_;
};

// Deterministic in (N, T, tau, dist, seed).
DataMatrix sample_data(std::size_t N, std::size_t T, std::size_t tau, const EntryDistribution& dist,
                       std::uint64_t seed);

struct SymmetrizedMatrix {
  HermitianMatrix values;
  std::size_t T = 0;
  std::size_t tau = 0;
  // max entry difference between the two construction routes
  double path_discrepancy = 0.0;
};

// (1/(2T)) sum_{k=1..T} (e_k e_{k+tau}^* + e_{k+tau} e_k^*); for tau = 0,
// (1/T) sum_{k<=T} e_k e_k^*.
HermitianMatrix lagged_outer_product_sum(const DataMatrix& x, std::size_t tau,
                                         const kernels::KernelTable* k = nullptr);

// (1/T) X C_{T+tau,tau} X^*.
HermitianMatrix band_product(const DataMatrix& x, std::size_t tau, const kernels::KernelTable* k = nullptr);

// Builds M_N(tau) both ways and throws ContractViolation if they differ by
// more than 1e-10 in any entry. Throws DimensionMismatch when X does not
// have more than tau columns.
SymmetrizedMatrix build_m(const DataMatrix& x, std::size_t tau, const kernels::KernelTable* k = nullptr);

SpectrumSample hermitian_eigs(const HermitianMatrix& m, const kernels::KernelTable* k = nullptr);
SpectrumSample hermitian_eigs(const BandMatrix& c, const kernels::KernelTable* k = nullptr);

// r-th output of SplitMix64 seeded with `master` (r counted from 0).
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t r);

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr std::size_t kDefaultMaxDimension = 4096;

struct SimulationConfig {
  std::size_t N = 0;
  std::size_t T = 0;
  std::size_t tau = 1;
  EntryDistribution dist;
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicates = 1;
  std::size_t threads = 1;
  std::size_t max_dimension = kDefaultMaxDimension;
};

// Pooled, sorted eigenvalues of `replicates` independent draws of M_N. The
// result does not depend on `threads`. Throws ResourceLimit if N exceeds
// max_dimension.
SpectrumSample simulate_esd(const SimulationConfig& config);

}  // namespace aclsd::ensemble
