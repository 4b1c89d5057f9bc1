#pragma once

#include <array>
#include <complex>
#include <vector>

namespace aclsd::theory {

using cplx = std::complex<double>;

// Concentration c = lim N/(T+tau) and its reciprocal y = 1/c.
struct LimitRatio {
  double c;
  double y;

  static LimitRatio from_c(double c);
};

// Arcsine law on (-1, 1): the limiting spectrum of the half-band matrix.
double arcsine_pdf(double t);
double arcsine_cdf(double t);

// Marchenko-Pastur law, the tau = 0 reference.
class MarchenkoPasturLaw {
 public:
  explicit MarchenkoPasturLaw(double c);

  double c() const { return c_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double atom_mass() const { return atom_; }

  double pdf(double x) const;
  double cdf(double x) const;

 private:
  double c_;
  double lower_;
  double upper_;
  double atom_;
};

double mp_pdf(double x, double c);
double mp_cdf(double x, double c);

// Density of the symmetrized auto-cross covariance limit. Zero for |x| > a(c),
// even in x. At x = 0 the value at |x| = kOriginClamp is returned (see
// phi_at_origin).
double phi_density(double x, double c);

inline constexpr double kOriginClamp = 1e-8;

struct OriginDensity {
  double value;
  bool divergent;  // true for c = 1, where the density blows up like |x|^{-1/2}
};

OriginDensity phi_at_origin(double c);

// y0^2/(1+y0) - ((1-c)/|x| + 1/sqrt(1+y0))^2 for |x| > 0, in a cancellation-free
// form. Positive inside the support, negative outside.
double density_radicand(double x, double c);

// sqrt(|x|) * phi(x): finite at the origin for every c, used as the
// quadrature integrand after the x = a sin^2(theta) substitution.
double phi_sqrt_weighted(double x, double c);

// The distribution F_c with a tabulated continuous part. Construction
// integrates the density once; cdf lookups are then cheap and monotone.
class LimitLaw {
 public:
  explicit LimitLaw(double c);

  const LimitRatio& ratio() const { return ratio_; }
  double support_endpoint() const { return a_; }
  double atom_mass() const { return atom_; }
  // min(1, 1/c)
  double continuous_mass() const { return 1.0 - atom_; }
  // integral of the density over [-a, a] as computed by quadrature
  double continuous_mass_quadrature() const { return 2.0 * half_mass_; }

  double density(double x) const { return phi_density(x, ratio_.c); }
  double cdf(double x) const;       // right-continuous
  double cdf_left(double x) const;  // F(x-)
  // CDF of the continuous part alone, normalized to total mass 1.
  double continuous_cdf(double x) const;

 private:
  // integral of the density over [0, x] for 0 <= x <= a
  double half_integral(double x) const;

  LimitRatio ratio_;
  double a_;
  double atom_;
  double half_mass_ = 0.0;
  std::vector<double> theta_nodes_;
  std::vector<double> cumulative_;
};

double lsd_cdf(double x, double c);
double lsd_cdf_left(double x, double c);

// ---- Stieltjes transform -------------------------------------------------

struct StieltjesPoint {
  cplx z;
  cplx m;
  double residual;
};

// |(1 - c^2 m^2)(c + c z m - 1)^2 - 1|, evaluated in extended precision.
double quartic_residual(cplx m, cplx z, double c);

// Coefficients (degree 4 down to 0) of the quartic in m whose roots contain m(z).
std::array<cplx, 5> quartic_coefficients(cplx z, double c);

// All four roots of the quartic (companion-matrix eigenvalues, Newton polished).
std::array<cplx, 4> quartic_roots(cplx z, double c);

// m(z) for Im z > 0: continuation from z0 = i 1e6 (where m ~ -1/z) along the
// straight segment to z, taking at each step the quartic root nearest the
// predicted value. Throws DomainError for Im z <= 0.
StieltjesPoint stieltjes(cplx z, double c);

// The four closed-form roots m1..m4 at real x != 0 built from y0(x, c), with
// principal square roots.
std::array<cplx, 4> closed_form_roots(double x, double c);

// Boundary value m(x + i0) assembled from the closed forms: m1 for x < 0, m3
// for x > 0, with the inner square root taken on the branch reached from the
// upper half-plane. Complex inside the support, real outside.
cplx stieltjes_boundary(double x, double c);

// Real value of m at x outside the support; DomainError for |x| <= a(c).
double stieltjes_real(double x, double c);

// (1/pi) Im m(x + i eps)
double density_via_inversion(double x, double c, double eps);

// ---- psi and the self-consistency identity -------------------------------

enum class PoleSelection {
  Inside,   // residue at the pole inside the unit circle (correct)
  Outside,  // deliberately wrong branch, for mutation checks only
};

struct PsiBranch {
  cplx u;
  double y;
  cplx s_inside;
  cplx s_outside;
  cplx value;
};

// psi(u) = -1/u + y * int t / (1 + t u) dH(t) with H the arcsine law, via the
// residue at the pole of 2 / (u s^2 + 2 s + u) inside |s| = 1.
// Throws DomainError at u = 0 and PoleOnContour when a pole lies on |s| = 1,
// which happens exactly for real u with |u| >= 1.
PsiBranch psi(cplx u, double y, PoleSelection selection = PoleSelection::Inside);

// Transforms of the three normalizations at the same argument z:
//   m       of (1/T) X C X*   (the target law)
//   m_under of (1/N) X C X*   m_under(z) = c m(c z)
//   m_tilde of (1/N) X* X C   m_tilde(z) = c m_under(z) - (1 - c)/z
struct CompanionTransforms {
  cplx m;
  cplx m_under;
  cplx m_tilde;
};

CompanionTransforms companion_transforms(cplx z, double c);

// |z - psi(y m_tilde(z) + (y - 1)/z)| with y = 1/c.
double self_consistency_residual(cplx z, double c, PoleSelection selection = PoleSelection::Inside);

}  // namespace aclsd::theory
