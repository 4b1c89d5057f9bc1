#include "aclsd/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "aclsd/error.hpp"

namespace aclsd::ensemble {

BandMatrix::BandMatrix(std::size_t n, std::size_t tau) : n_(n), tau_(tau) {
  if (n == 0) throw InvalidInput("band matrix dimension must be positive");
}

double BandMatrix::entry(std::size_t i, std::size_t j) const {
  if (tau_ == 0) return i == j ? 1.0 : 0.0;
  const std::size_t d = i > j ? i - j : j - i;
  return d == tau_ ? 0.5 : 0.0;
}

HermitianMatrix BandMatrix::dense() const {
  if (tau_ == 0) return HermitianMatrix::identity(n_);
  std::vector<double> v(n_ * n_, 0.0);
  for (std::size_t i = 0; i + tau_ < n_; ++i) {
    v[i * n_ + i + tau_] = 0.5;
    v[(i + tau_) * n_ + i] = 0.5;
  }
  return HermitianMatrix::from_real(n_, std::move(v));
}

BandMatrix build_c(std::size_t n, std::size_t tau) { return BandMatrix(n, tau); }

namespace {

// cos(k pi / (m + 1)) written as a sine so the middle eigenvalue is exactly 0
double chain_eigenvalue(std::size_t k, std::size_t m) {
  const double num = static_cast<double>(m + 1) - 2.0 * static_cast<double>(k);
  return std::sin(num * std::numbers::pi / (2.0 * static_cast<double>(m + 1)));
}

}  // namespace

SpectrumSample c_spectrum_closed(std::size_t n, std::size_t tau) {
  if (n == 0) throw InvalidInput("band matrix dimension must be positive");
  if (tau == 0) throw InvalidInput("closed-form spectrum requires tau >= 1");
  SpectrumSample out;
  out.values.reserve(n);
  for (std::size_t r = 1; r <= std::min(tau, n); ++r) {
    const std::size_t m = (n - r) / tau + 1;
    for (std::size_t k = 1; k <= m; ++k) out.values.push_back(chain_eigenvalue(k, m));
  }
  std::sort(out.values.begin(), out.values.end());
  out.provenance = "band-matrix closed form n=" + std::to_string(n) + " tau=" + std::to_string(tau);
  return out;
}

std::vector<double> c_spectrum_single_chain(std::size_t n, std::size_t tau) {
  if (tau == 0 || tau > n + 1) throw InvalidInput("single-chain formula requires 1 <= tau <= n + 1");
  std::vector<double> v(tau - 1, 0.0);
  const std::size_t m = n - tau + 1;
  for (std::size_t k = 1; k <= m; ++k) {
    v.push_back(std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(m + 1)));
  }
  std::sort(v.begin(), v.end());
  return v;
}

// ---- entry distributions -------------------------------------------------

std::string EntryDistribution::name() const {
  switch (kind) {
    case EntryKind::ComplexGaussian:
      return "complex-gaussian";
    case EntryKind::RealGaussian:
      return "real-gaussian";
    case EntryKind::Rademacher:
      return "rademacher";
    case EntryKind::ParetoSymmetric: {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os << "pareto-symmetric(" << alpha << ")";
      return os.str();
    }
  }
  return "unknown";
}

EntryDistribution EntryDistribution::parse(const std::string& text) {
  if (text == "complex-gaussian") return {EntryKind::ComplexGaussian, 0.0};
  if (text == "real-gaussian") return {EntryKind::RealGaussian, 0.0};
  if (text == "rademacher") return {EntryKind::Rademacher, 0.0};
  const std::string prefix = "pareto-symmetric(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string num = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    std::istringstream is(num);
    is.imbue(std::locale::classic());
    double alpha = 0.0;
    if (is >> alpha && is.eof()) {
      EntryDistribution d{EntryKind::ParetoSymmetric, alpha};
      d.validate();
      return d;
    }
  }
  throw InvalidInput("unknown entry distribution: " + text);
}

void EntryDistribution::validate() const {
  if (kind == EntryKind::ParetoSymmetric && !(alpha > 2.0 && std::isfinite(alpha))) {
    throw InvalidInput("pareto-symmetric entries need alpha > 2 for a finite variance");
  }
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, bool complex_valued)
    : rows_(rows), cols_(cols), re_(rows * cols, 0.0), im_(complex_valued ? rows * cols : 0, 0.0) {}

void DataMatrix::set(std::size_t i, std::size_t j, std::complex<double> v) {
  re_[i * cols_ + j] = v.real();
  if (!im_.empty()) {
    im_[i * cols_ + j] = v.imag();
  } else if (v.imag() != 0.0) {
    throw ContractViolation("complex value written into a real data matrix");
  }
}

namespace {

// Platform-independent draws on top of mt19937_64 (whose output sequence is
// fixed by the standard, unlike std::normal_distribution).
class EntrySource {
 public:
  explicit EntrySource(std::uint64_t seed) : gen_(seed) {}

  // uniform on (0, 1]
  double uniform() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }
  bool coin() { return (gen_() >> 63) != 0; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

DataMatrix sample_data(std::size_t N, std::size_t T, std::size_t tau, const EntryDistribution& dist,
                       std::uint64_t seed) {
  if (N == 0 || T == 0) throw InvalidInput("sample_data requires N, T >= 1");
  dist.validate();
  DataMatrix x(N, T + tau, dist.is_complex());
  x.seed = seed;
  x.dist = dist;
  EntrySource src(seed);
  const std::size_t cols = T + tau;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double pareto_scale =
      dist.kind == EntryKind::ParetoSymmetric ? std::sqrt((dist.alpha - 1.0) * (dist.alpha - 2.0) / 2.0) : 0.0;

  for (std::size_t i = 0; i < N; ++i) {
    double* re = x.re_row(i);
    for (std::size_t j = 0; j < cols; ++j) {
      switch (dist.kind) {
        case EntryKind::ComplexGaussian: {
          const double g1 = src.normal();
          const double g2 = src.normal();
          re[j] = g1 * inv_sqrt2;
          x.im_row(i)[j] = g2 * inv_sqrt2;
          break;
        }
        case EntryKind::RealGaussian:
          re[j] = src.normal();
          break;
        case EntryKind::Rademacher:
          re[j] = src.coin() ? 1.0 : -1.0;
          break;
        case EntryKind::ParetoSymmetric: {
          // Lomax P - 1 with P ~ Pareto(1, alpha); E (P - 1)^2 = 2 / ((alpha-1)(alpha-2))
          const double p = std::pow(src.uniform(), -1.0 / dist.alpha);
          const double v = (p - 1.0) * pareto_scale;
          re[j] = src.coin() ? v : -v;
          break;
        }
      }
    }
  }
  return x;
}

// ---- M_N -----------------------------------------------------------------

namespace {

std::size_t sample_length(const DataMatrix& x, std::size_t tau) {
  if (x.cols() <= tau) throw DimensionMismatch("data matrix needs T + tau columns with T >= 1");
  return x.cols() - tau;
}

}  // namespace

HermitianMatrix lagged_outer_product_sum(const DataMatrix& x, std::size_t tau, const kernels::KernelTable* kt) {
  const auto& k = kernels::resolve(kt);
  const std::size_t T = sample_length(x, tau);
  const std::size_t n = x.rows();
  HermitianMatrix m(n, x.is_complex());
  const double scale = 1.0 / (2.0 * static_cast<double>(T));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (x.is_complex()) {
        // e_k e_{k+tau}^* + e_{k+tau} e_k^*, entry (i, j)
        const auto s = k.zdotc(x.re_row(i), x.im_row(i), x.re_row(j) + tau, x.im_row(j) + tau, T) +
                       k.zdotc(x.re_row(i) + tau, x.im_row(i) + tau, x.re_row(j), x.im_row(j), T);
        const std::complex<double> v = i == j ? std::complex<double>(s.real() * scale, 0.0) : s * scale;
        m.set(i, j, v);
        m.set(j, i, std::conj(v));
      } else {
        const double s = k.ddot(x.re_row(i), x.re_row(j) + tau, T) + k.ddot(x.re_row(i) + tau, x.re_row(j), T);
        m.set(i, j, s * scale);
        m.set(j, i, s * scale);
      }
    }
  }
  return m;
}

HermitianMatrix band_product(const DataMatrix& x, std::size_t tau, const kernels::KernelTable* kt) {
  const auto& k = kernels::resolve(kt);
  const std::size_t T = sample_length(x, tau);
  const std::size_t n = x.rows();
  const std::size_t cols = x.cols();

  // Y = X C with C = C_{T+tau,tau}: column j of Y is (e_{j-tau} + e_{j+tau}) / 2
  DataMatrix y(n, cols, x.is_complex());
  auto apply_band = [&](const double* src, double* dst) {
    if (tau == 0) {
      std::copy(src, src + cols, dst);
      return;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double v = 0.0;
      if (j >= tau) v += src[j - tau];
      if (j + tau < cols) v += src[j + tau];
      dst[j] = 0.5 * v;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    apply_band(x.re_row(i), y.re_row(i));
    if (x.is_complex()) apply_band(x.im_row(i), y.im_row(i));
  }

  HermitianMatrix m(n, x.is_complex());
  const double scale = 1.0 / static_cast<double>(T);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (x.is_complex()) {
        const auto s = k.zdotc(y.re_row(i), y.im_row(i), x.re_row(j), x.im_row(j), cols) * scale;
        const std::complex<double> v = i == j ? std::complex<double>(s.real(), 0.0) : s;
        m.set(i, j, v);
        m.set(j, i, std::conj(v));
      } else {
        const double s = k.ddot(y.re_row(i), x.re_row(j), cols) * scale;
        m.set(i, j, s);
        m.set(j, i, s);
      }
    }
  }
  return m;
}

SymmetrizedMatrix build_m(const DataMatrix& x, std::size_t tau, const kernels::KernelTable* k) {
  const std::size_t T = sample_length(x, tau);
  HermitianMatrix outer = lagged_outer_product_sum(x, tau, k);
  const HermitianMatrix product = band_product(x, tau, k);
  double diff = 0.0;
  for (std::size_t i = 0; i < outer.dim(); ++i) {
    for (std::size_t j = 0; j < outer.dim(); ++j) diff = std::max(diff, std::abs(outer.at(i, j) - product.at(i, j)));
  }
  if (diff > 1e-10 * std::max(1.0, outer.max_abs())) {
    throw ContractViolation("outer-product and band-product constructions of M disagree");
  }
  return SymmetrizedMatrix{std::move(outer), T, tau, diff};
}

SpectrumSample hermitian_eigs(const HermitianMatrix& m, const kernels::KernelTable* k) {
  SpectrumSample s;
  s.values = hermitian_eigenvalues(m, k);
  s.provenance = "hermitian n=" + std::to_string(m.dim());
  return s;
}

SpectrumSample hermitian_eigs(const BandMatrix& c, const kernels::KernelTable* k) {
  SpectrumSample s;
  s.values = hermitian_eigenvalues(c.dense(), k);
  s.provenance = "band-matrix n=" + std::to_string(c.dim()) + " tau=" + std::to_string(c.tau());
  return s;
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t r) {
  std::uint64_t z = master + (r + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpectrumSample simulate_esd(const SimulationConfig& cfg) {
  if (cfg.N == 0 || cfg.T == 0) throw InvalidInput("simulate_esd requires N, T >= 1");
  if (cfg.replicates == 0) throw InvalidInput("simulate_esd requires at least one replicate");
  if (cfg.N > cfg.max_dimension) {
    throw ResourceLimit("N = " + std::to_string(cfg.N) + " exceeds the configured maximum " +
                        std::to_string(cfg.max_dimension));
  }
  cfg.dist.validate();

  std::vector<std::vector<double>> per_rep(cfg.replicates);
  auto run_one = [&](std::size_t r) {
    const DataMatrix x = sample_data(cfg.N, cfg.T, cfg.tau, cfg.dist, replicate_seed(cfg.seed, r));
    per_rep[r] = hermitian_eigenvalues(build_m(x, cfg.tau).values);
  };

  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, cfg.replicates);
  if (threads == 1) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t r = next++; r < cfg.replicates; r = next++) run_one(r);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SpectrumSample out;
  out.values.reserve(cfg.N * cfg.replicates);
  for (const auto& v : per_rep) out.values.insert(out.values.end(), v.begin(), v.end());
  std::sort(out.values.begin(), out.values.end());
  out.provenance = "simulate N=" + std::to_string(cfg.N) + " T=" + std::to_string(cfg.T) +
                   " tau=" + std::to_string(cfg.tau) + " dist=" + cfg.dist.name() +
                   " seed=" + std::to_string(cfg.seed) + " replicates=" + std::to_string(cfg.replicates);
  return out;
}

}  // namespace aclsd::ensemble
