#include "aclsd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aclsd/error.hpp"
#include "aclsd/stats.hpp"

namespace aclsd::oracles {

std::complex<double> psi_quadrature(std::complex<double> u, double y, double tol) {
  if (u == std::complex<double>(0.0, 0.0)) throw DomainError("psi is undefined at u = 0");
  auto integrand = [u](double theta) {
    const double t = std::cos(theta);
    return t / (1.0 + u * t);
  };
  const double re = stats::quad([&](double th) { return integrand(th).real(); }, 0.0, std::numbers::pi, tol);
  const double im = stats::quad([&](double th) { return integrand(th).imag(); }, 0.0, std::numbers::pi, tol);
  return -1.0 / u + y * std::complex<double>(re, im) / std::numbers::pi;
}

std::vector<double> cubic_roots_scan(const roots::Cubic& p, double min_abs, double max_abs, int points_per_decade) {
  std::vector<double> grid;
  const double decades = std::log10(max_abs / min_abs);
  const int m = static_cast<int>(std::ceil(decades * points_per_decade));
  for (int i = m; i >= 0; --i) grid.push_back(-min_abs * std::pow(10.0, decades * i / m));
  grid.push_back(0.0);
  for (int i = 0; i <= m; ++i) grid.push_back(min_abs * std::pow(10.0, decades * i / m));

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double lo = grid[i];
    double hi = grid[i + 1];
    double flo = p(lo);
    const double fhi = p(hi);
    if (flo == 0.0) {
      out.push_back(lo);
      continue;
    }
    if ((flo < 0.0) == (fhi < 0.0) || fhi == 0.0) continue;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = p(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  if (p(grid.back()) == 0.0) out.push_back(grid.back());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aclsd::oracles
