#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aclsd/error.hpp"
#include "aclsd/roots.hpp"
#include "aclsd/theory.hpp"

namespace aclsd::theory {
namespace {

using lcplx = std::complex<long double>;

constexpr int kHomotopySteps = 200;
constexpr double kStartHeight = 1e6;

void check_ratio(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw InvalidInput("concentration c must be positive and finite");
}

// c^4 z^2 m^4 + 2c^3(c-1) z m^3 + (c^2(c-1)^2 - c^2 z^2) m^2 - 2c(c-1) z m + c(2-c),
// which is -[(1 - c^2 m^2)(c + c z m - 1)^2 - 1] expanded.
std::array<lcplx, 5> coefficients_ld(cplx z, double c) {
  const long double cl = c;
  const long double c2 = cl * cl;
  const long double cm1 = cl - 1.0L;
  const lcplx zl(z.real(), z.imag());
  const lcplx z2 = zl * zl;
  return {c2 * c2 * z2, 2.0L * c2 * cl * cm1 * zl, c2 * cm1 * cm1 - c2 * z2, -2.0L * cl * cm1 * zl,
          cl * (2.0L - cl)};
}

lcplx horner(const std::array<lcplx, 5>& p, lcplx m) {
  lcplx v = p[0];
  for (int i = 1; i < 5; ++i) v = v * m + p[i];
  return v;
}

lcplx horner_derivative(const std::array<lcplx, 5>& p, lcplx m) {
  lcplx v = 4.0L * p[0];
  v = v * m + 3.0L * p[1];
  v = v * m + 2.0L * p[2];
  v = v * m + p[3];
  return v;
}

cplx polish(const std::array<lcplx, 5>& p, cplx m0) {
  lcplx m(m0.real(), m0.imag());
  lcplx f = horner(p, m);
  for (int iter = 0; iter < 8; ++iter) {
    const lcplx d = horner_derivative(p, m);
    if (std::abs(d) == 0.0L) break;
    const lcplx cand = m - f / d;
    const lcplx fc = horner(p, cand);
    if (!(std::abs(fc) < std::abs(f))) break;
    m = cand;
    f = fc;
  }
  return {static_cast<double>(m.real()), static_cast<double>(m.imag())};
}

std::size_t nearest(const std::array<cplx, 4>& roots, cplx target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (std::abs(roots[i] - target) < std::abs(roots[best] - target)) best = i;
  }
  return best;
}

}  // namespace

std::array<cplx, 5> quartic_coefficients(cplx z, double c) {
  const auto p = coefficients_ld(z, c);
  std::array<cplx, 5> out;
  for (int i = 0; i < 5; ++i) out[i] = cplx(static_cast<double>(p[i].real()), static_cast<double>(p[i].imag()));
  return out;
}

double quartic_residual(cplx m, cplx z, double c) {
  const long double cl = c;
  const lcplx ml(m.real(), m.imag());
  const lcplx zl(z.real(), z.imag());
  const lcplx lin = cl + cl * zl * ml - 1.0L;
  const lcplx r = (1.0L - cl * cl * ml * ml) * lin * lin - 1.0L;
  return static_cast<double>(std::abs(r));
}

std::array<cplx, 4> quartic_roots(cplx z, double c) {
  check_ratio(c);
  const auto p = coefficients_ld(z, c);
  if (std::abs(p[0]) == 0.0L) throw DomainError("quartic degenerates at z = 0");
  // companion matrix of the monic quartic
  Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) {
    const lcplx ci = -p[i + 1] / p[0];
    comp(0, i) = cplx(static_cast<double>(ci.real()), static_cast<double>(ci.imag()));
  }
  for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw AccuracyFailure("companion eigenvalues did not converge", 0.0);
  std::array<cplx, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = polish(p, solver.eigenvalues()(i));
  return out;
}

StieltjesPoint stieltjes(cplx z, double c) {
  check_ratio(c);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidInput("non-finite z");
  if (!(z.imag() > 0.0)) throw DomainError("stieltjes requires Im z > 0");

  const cplx z0(0.0, std::max(kStartHeight, 1e3 * std::abs(z)));
  const cplx span = z0 - z;
  const double dist = std::abs(span);
  // Geometric spacing along the segment: the last intermediate point is
  // within 0.1 Im z of the target.
  const double end_dist = std::min(dist, 0.1 * z.imag());
  const double ratio = dist > 0.0 ? std::pow(end_dist / dist, 1.0 / (kHomotopySteps - 1)) : 0.0;

  auto roots = quartic_roots(z0, c);
  cplx m = roots[nearest(roots, -1.0 / z0)];
  cplx z_prev = z0;
  cplx m_prev = m;
  cplx dz_prev = 0.0;
  double scale = 1.0;
  for (int k = 1; k <= kHomotopySteps; ++k) {
    scale *= ratio;
    const cplx zk = k < kHomotopySteps ? z + span * scale : z;
    const cplx dz = zk - z_prev;
    cplx predicted = m;
    if (k > 1 && std::abs(dz_prev) > 0.0) predicted = m + (m - m_prev) * (dz / dz_prev);
    roots = quartic_roots(zk, c);
    m_prev = m;
    m = roots[nearest(roots, predicted)];
    dz_prev = dz;
    z_prev = zk;
  }
  if (!(m.imag() > 0.0)) {
    // keep the Nevanlinna branch: nearest root with positive imaginary part
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& r : roots) {
      if (r.imag() > 0.0 && std::abs(r - m) < best) {
        best = std::abs(r - m);
        m = r;
        found = true;
      }
    }
    if (!found) throw AccuracyFailure("no quartic root in the upper half-plane", m.imag());
  }
  return StieltjesPoint{z, m, quartic_residual(m, z, c)};
}

std::array<cplx, 4> closed_form_roots(double x, double c) {
  check_ratio(c);
  if (x == 0.0) throw DomainError("closed-form roots are undefined at x = 0");
  const double y = roots::y0(x, c);
  const double w = std::sqrt(1.0 + y);
  const double k = (1.0 - c) / x;
  const double q = y * y / (1.0 + y);
  const cplx d1 = std::sqrt(cplx((k - 1.0 / w) * (k - 1.0 / w) - q, 0.0));
  const cplx d3 = std::sqrt(cplx((k + 1.0 / w) * (k + 1.0 / w) - q, 0.0));
  const double two_c = 2.0 * c;
  return {(k + w + d1) / two_c, (k + w - d1) / two_c, (k - w + d3) / two_c, (k - w - d3) / two_c};
}

cplx stieltjes_boundary(double x, double c) {
  check_ratio(c);
  if (x == 0.0) throw DomainError("boundary value is undefined at x = 0");
  // m(-x + i0) = -conj(m(x + i0)) for the symmetric law; this is m3 for
  // x > 0 and m1 for x < 0 once the real square root outside the support is
  // taken with the sign continuous from the upper half-plane.
  const double ax = std::abs(x);
  const double sign = x > 0.0 ? 1.0 : -1.0;
  const double t = roots::scaled_y0(ax, c);
  const double x2 = ax * ax;
  const double w = std::sqrt(x2 + t) / ax;  // sqrt(1 + y0)
  const double kk = (1.0 - c) / ax;
  const double delta = 4.0 * (t + x2) / (t * t);  // w^2 - kk^2
  const double k_minus_w = kk >= 0.0 ? -delta / (kk + w) : kk - w;
  const double r = density_radicand(ax, c);
  const double two_c = 2.0 * c;
  if (r > 0.0) {
    return {sign * k_minus_w / two_c, std::sqrt(r) / two_c};
  }
  return {sign * (k_minus_w + std::sqrt(-r)) / two_c, 0.0};
}

double stieltjes_real(double x, double c) {
  if (std::abs(x) <= roots::support_endpoint(c)) {
    throw DomainError("stieltjes_real requires |x| > a(c)");
  }
  return stieltjes_boundary(x, c).real();
}

double density_via_inversion(double x, double c, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("inversion requires eps > 0");
  return stieltjes(cplx(x, eps), c).m.imag() / std::numbers::pi;
}

PsiBranch psi(cplx u, double y, PoleSelection selection) {
  if (!(y > 0.0) || !std::isfinite(y)) throw InvalidInput("psi requires y > 0");
  if (u == cplx(0.0, 0.0)) throw DomainError("psi is undefined at u = 0");
  // poles of 2 / (u s^2 + 2 s + u); s1 s2 = 1
  const cplx sq = std::sqrt(1.0 - u * u);
  const cplx big = -(1.0 + sq);  // |1 + sq| >= |1 - sq| for the principal root
  const cplx s_a = big / u;
  const cplx s_b = u / big;
  if (std::abs(std::abs(s_a) - std::abs(s_b)) <= 1e-12 * std::max(1.0, std::abs(s_a))) {
    throw PoleOnContour("psi: pole of the integrand lies on the unit circle");
  }
  PsiBranch out{u, y, s_b, s_a, 0.0};
  if (std::abs(s_a) < std::abs(s_b)) std::swap(out.s_inside, out.s_outside);
  const cplx inside = selection == PoleSelection::Inside ? out.s_inside : out.s_outside;
  const cplx outside = selection == PoleSelection::Inside ? out.s_outside : out.s_inside;
  out.value = (y - 1.0) / u - 2.0 * y / (u * u * (inside - outside));
  return out;
}

CompanionTransforms companion_transforms(cplx z, double c) {
  check_ratio(c);
  const cplx m = stieltjes(z, c).m;
  const cplx m_under = c * stieltjes(c * z, c).m;
  const cplx m_tilde = c * m_under - (1.0 - c) / z;
  return {m, m_under, m_tilde};
}

double self_consistency_residual(cplx z, double c, PoleSelection selection) {
  const auto t = companion_transforms(z, c);
  const double y = 1.0 / c;
  const cplx u = y * t.m_tilde + (y - 1.0) / z;
  return std::abs(z - psi(u, y, selection).value);
}

}  // namespace aclsd::theory
