#include <algorithm>
#include <cmath>
#include <numbers>

#include "aclsd/error.hpp"
#include "aclsd/roots.hpp"
#include "aclsd/stats.hpp"
#include "aclsd/theory.hpp"

namespace aclsd::theory {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadicandSlack = 1e-12;
constexpr int kPanels = 64;
constexpr double kPanelTolerance = 1e-13;

void check_ratio(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw InvalidInput("concentration c must be positive and finite");
}

double atom_for(double c) { return c > 1.0 ? 1.0 - 1.0 / c : 0.0; }

// Radicand of the density formula, rewritten so that the two O(1/x^2) terms
// cancel analytically: with t = x^2 y0, W = sqrt(x^2 + t), k = 1 - c,
//   y0^2/(1+y0) - (k/|x| + 1/sqrt(1+y0))^2 = (W - k - 2x^2/W)(W + k) / x^2
// and W^2 - k^2 = 4 x^2 (t + x^2) / t^2.
double radicand_impl(double ax, double c) {
  const double t = roots::scaled_y0(ax, c);
  const double x2 = ax * ax;
  const double k = 1.0 - c;
  const double w = std::sqrt(x2 + t);
  const double delta = 4.0 * (t + x2) / (t * t);
  if (k >= 0.0) {
    return delta - 2.0 * (w + k) / w;
  }
  return delta * (1.0 - 2.0 * x2 / (w * (w - k)));
}

double clamp_radicand(double r) { return r >= -kRadicandSlack ? std::max(r, 0.0) : 0.0; }

}  // namespace

LimitRatio LimitRatio::from_c(double c) {
  check_ratio(c);
  return LimitRatio{c, 1.0 / c};
}

double arcsine_pdf(double t) {
  if (!(t > -1.0 && t < 1.0)) return 0.0;
  return 1.0 / (kPi * std::sqrt((1.0 - t) * (1.0 + t)));
}

double arcsine_cdf(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 - std::acos(t) / kPi;
}

// ---- Marchenko-Pastur ----------------------------------------------------

MarchenkoPasturLaw::MarchenkoPasturLaw(double c) : c_(c) {
  check_ratio(c);
  const double s = std::sqrt(c);
  lower_ = (1.0 - s) * (1.0 - s);
  upper_ = (1.0 + s) * (1.0 + s);
  atom_ = atom_for(c);
}

double MarchenkoPasturLaw::pdf(double x) const {
  if (!(x > lower_ && x < upper_)) return 0.0;
  return std::sqrt((upper_ - x) * (x - lower_)) / (2.0 * kPi * c_ * x);
}

double MarchenkoPasturLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= upper_) return 1.0;
  if (x <= lower_) return atom_;
  // x = lower + (upper - lower) sin^2(theta) flattens both square-root edges
  const double width = upper_ - lower_;
  const double theta_x = std::asin(std::sqrt((x - lower_) / width));
  const double lo = lower_;
  const double cc = c_;
  auto h = [width, lo, cc](double theta) {
    const double s = std::sin(theta);
    const double co = std::cos(theta);
    if (lo == 0.0) return width * co * co / (kPi * cc);
    const double xv = lo + width * s * s;
    return width * width * s * s * co * co / (kPi * cc * xv);
  };
  const double part = stats::quad(h, 0.0, theta_x, 1e-12);
  return std::min(1.0, atom_ + part);
}

double mp_pdf(double x, double c) { return MarchenkoPasturLaw(c).pdf(x); }
double mp_cdf(double x, double c) { return MarchenkoPasturLaw(c).cdf(x); }

// ---- density -------------------------------------------------------------

double density_radicand(double x, double c) {
  check_ratio(c);
  if (x == 0.0) throw DomainError("density radicand is undefined at x = 0");
  return radicand_impl(std::abs(x), c);
}

double phi_density(double x, double c) {
  check_ratio(c);
  const double a = roots::support_endpoint(c);
  double ax = std::abs(x);
  if (ax > a) return 0.0;
  if (ax < kOriginClamp) ax = kOriginClamp;
  return std::sqrt(clamp_radicand(radicand_impl(ax, c))) / (2.0 * c * kPi);
}

OriginDensity phi_at_origin(double c) {
  return OriginDensity{phi_density(0.0, c), std::abs(c - 1.0) < roots::kUnitRatioTolerance};
}

double phi_sqrt_weighted(double x, double c) {
  check_ratio(c);
  const double ax = std::abs(x);
  if (ax > roots::support_endpoint(c)) return 0.0;
  if (ax == 0.0) {
    // x R -> 2 when c = 1 (t = 2|x|), and -> 0 otherwise
    return c == 1.0 ? std::sqrt(2.0) / (2.0 * c * kPi) : 0.0;
  }
  return std::sqrt(ax * clamp_radicand(radicand_impl(ax, c))) / (2.0 * c * kPi);
}

// ---- LimitLaw ------------------------------------------------------------

LimitLaw::LimitLaw(double c)
    : ratio_(LimitRatio::from_c(c)), a_(roots::support_endpoint(c)), atom_(atom_for(c)) {
  // x = a sin^2(theta): dx = 2 sqrt(a) sqrt(x) cos(theta) dtheta, which
  // absorbs both the square-root edge at a and the |x|^{-1/2} peak at c = 1.
  const double h = 0.5 * kPi / kPanels;
  theta_nodes_.resize(kPanels + 1);
  cumulative_.assign(kPanels + 1, 0.0);
  for (int k = 0; k <= kPanels; ++k) theta_nodes_[k] = h * k;
  theta_nodes_[kPanels] = 0.5 * kPi;
  const double sa = std::sqrt(a_);
  const double cc = ratio_.c;
  const double aa = a_;
  auto g = [sa, cc, aa](double theta) {
    const double s = std::sin(theta);
    return 2.0 * sa * std::cos(theta) * phi_sqrt_weighted(aa * s * s, cc);
  };
  for (int k = 0; k < kPanels; ++k) {
    cumulative_[k + 1] = cumulative_[k] + stats::quad(g, theta_nodes_[k], theta_nodes_[k + 1], kPanelTolerance);
  }
  half_mass_ = cumulative_[kPanels];
}

double LimitLaw::half_integral(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= a_) return half_mass_;
  const double theta = std::asin(std::sqrt(x / a_));
  const double h = theta_nodes_[1];
  const int k = std::clamp(static_cast<int>(theta / h), 0, kPanels - 1);
  const double sa = std::sqrt(a_);
  const double cc = ratio_.c;
  const double aa = a_;
  auto g = [sa, cc, aa](double th) {
    const double s = std::sin(th);
    return 2.0 * sa * std::cos(th) * phi_sqrt_weighted(aa * s * s, cc);
  };
  const double panel = cumulative_[k + 1] - cumulative_[k];
  const double part = theta > theta_nodes_[k] ? stats::quad(g, theta_nodes_[k], theta, kPanelTolerance) : 0.0;
  return cumulative_[k] + std::clamp(part, 0.0, panel);
}

double LimitLaw::cdf(double x) const {
  if (x <= -a_) return 0.0;
  if (x >= a_) return 1.0;
  const double mc = continuous_mass();
  const double frac = half_integral(std::abs(x)) / (2.0 * half_mass_);
  if (x < 0.0) return mc * (0.5 - frac);
  return atom_ + mc * (0.5 + frac);
}

double LimitLaw::cdf_left(double x) const { return x == 0.0 ? cdf(x) - atom_ : cdf(x); }

double LimitLaw::continuous_cdf(double x) const {
  const double f = cdf(x) - (x >= 0.0 ? atom_ : 0.0);
  return std::clamp(f / continuous_mass(), 0.0, 1.0);
}

double lsd_cdf(double x, double c) { return LimitLaw(c).cdf(x); }
double lsd_cdf_left(double x, double c) { return LimitLaw(c).cdf_left(x); }

}  // namespace aclsd::theory
