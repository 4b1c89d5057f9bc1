#include "aclsd/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aclsd/error.hpp"

namespace aclsd::roots {
namespace {

constexpr double kMergeRelative = 1e-9;
constexpr double kNearDoubleRelative = 1e-5;
constexpr double kDoubleResidual = 1e-12;

double rel_scale(double v) { return std::max(1.0, std::abs(v)); }

// Critical point of the cubic (root of its derivative) closest to `near`.
// Returns `near` when the derivative has no real root.
double critical_point_near(const Cubic& p, double near) {
  const double qa = 3.0 * p.a3;
  const double qb = 2.0 * p.a2;
  const double qc = p.a1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) {
    return -qb / (2.0 * qa);
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  const double s1 = q / qa;
  const double s2 = q != 0.0 ? qc / q : s1;
  return std::abs(s1 - near) <= std::abs(s2 - near) ? s1 : s2;
}

bool is_double_root_at(const Cubic& p, double s) {
  const double mag = rel_scale(s);
  return std::abs(p(s)) <= kDoubleResidual * p.scale() * mag * mag * mag;
}

double polish(const Cubic& p, double r) {
  double fr = p(r);
  for (int iter = 0; iter < 12 && fr != 0.0; ++iter) {
    const double d = p.derivative(r);
    if (d == 0.0 || !std::isfinite(d)) break;
    double step = fr / d;
    bool improved = false;
    for (int damp = 0; damp < 8; ++damp) {
      const double cand = r - step;
      const double fc = p(cand);
      if (std::abs(fc) < std::abs(fr)) {
        r = cand;
        fr = fc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return r;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidInput(std::string("non-finite argument: ") + what);
  }
}

void check_ratio(double c) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw InvalidInput("concentration c must be positive and finite");
  }
}

}  // namespace

double Cubic::scale() const {
  return std::max({1.0, std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
}

namespace {

// Expects a monic cubic whose roots are of order one.
std::vector<RealRoot> solve_normalized(const Cubic& p) {
  const double b = p.a2 / p.a3;
  const double c = p.a1 / p.a3;
  const double d = p.a0 / p.a3;
  const double shift = b / 3.0;
  // depressed form t^3 + P t + Q with y = t - b/3
  const double P = c - b * b / 3.0;
  const double Q = b * (2.0 * b * b - 9.0 * c) / 27.0 + d;
  const double half_q = 0.5 * Q;
  const double third_p = P / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  if (P == 0.0 && Q == 0.0) {
    return {{-shift, 3}};
  }

  std::vector<double> raw;
  if (disc < 0.0) {
    // three distinct real roots
    const double r = std::sqrt(-third_p);
    const double cosarg = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
    const double phi = std::acos(cosarg);
    for (int k = 0; k < 3; ++k) {
      const double t = 2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0);
      raw.push_back(t - shift);
    }
  } else {
    const double s = std::sqrt(disc);
    const double A = -std::copysign(std::cbrt(std::abs(half_q) + s), half_q);
    const double B = A == 0.0 ? 0.0 : -third_p / A;
    const double r0 = polish(p, A + B - shift);
    raw.push_back(r0);
    // The remaining pair is complex unless the discriminant only rounded
    // positive around a double root; deflate and test the critical point.
    const double q1 = b + r0;
    const double q0 = c + r0 * q1;
    const double dq = q1 * q1 - 4.0 * q0;
    const double re = -0.5 * q1;
    if (dq >= 0.0) {
      const double sq = std::sqrt(dq);
      raw.push_back(re - 0.5 * sq);
      raw.push_back(re + 0.5 * sq);
    } else if (0.5 * std::sqrt(-dq) <= kNearDoubleRelative * rel_scale(re)) {
      const double s2 = critical_point_near(p, re);
      if (is_double_root_at(p, s2)) {
        raw.push_back(s2);
        raw.push_back(s2);
      }
    }
  }

  for (double& r : raw) r = polish(p, r);
  std::sort(raw.begin(), raw.end());

  std::vector<RealRoot> out;
  if (raw.size() == 3) {
    const double spread = raw[2] - raw[0];
    const double infl = -shift;
    if (spread <= kNearDoubleRelative * rel_scale(infl) && is_double_root_at(p, infl) &&
        std::abs(p.derivative(infl)) <= kDoubleResidual * p.scale() * rel_scale(infl) * rel_scale(infl)) {
      return {{infl, 3}};
    }
  }

  for (std::size_t i = 0; i < raw.size();) {
    if (i + 1 < raw.size()) {
      const double lo = raw[i];
      const double hi = raw[i + 1];
      const double gap = hi - lo;
      const double mag = rel_scale(0.5 * (lo + hi));
      bool merge = gap <= kMergeRelative * mag;
      double value = 0.5 * (lo + hi);
      if (gap <= kNearDoubleRelative * mag) {
        const double s = critical_point_near(p, 0.5 * (lo + hi));
        if (is_double_root_at(p, s)) {
          merge = true;
          value = s;
        }
      }
      if (merge) {
        out.push_back({value, 2});
        i += 2;
        continue;
      }
    }
    out.push_back({raw[i], 1});
    ++i;
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& l, const RealRoot& r) { return l.value < r.value; });
  return out;
}

}  // namespace

std::vector<RealRoot> solve_cubic(const Cubic& p) {
  check_finite(p.a3, "a3");
  check_finite(p.a2, "a2");
  check_finite(p.a1, "a1");
  check_finite(p.a0, "a0");
  if (p.a3 == 0.0) {
    throw InvalidInput("leading cubic coefficient is zero");
  }
  // y = sigma s with sigma a power of two near the root magnitude, so the
  // absolute tolerances below act relative to the roots themselves
  const double b = p.a2 / p.a3;
  const double c = p.a1 / p.a3;
  const double d = p.a0 / p.a3;
  const double size = std::max({std::abs(b), std::sqrt(std::abs(c)), std::cbrt(std::abs(d))});
  if (size == 0.0) return {{0.0, 3}};
  const double sigma = std::ldexp(1.0, std::ilogb(size));
  auto roots = solve_normalized(Cubic{1.0, b / sigma, c / (sigma * sigma), d / (sigma * sigma * sigma)});
  for (auto& r : roots) r.value *= sigma;
  return roots;
}

double scaled_y0(double x, double c) {
  check_finite(x, "x");
  check_ratio(c);
  const double k2 = (1.0 - c) * (1.0 - c);
  const double x2 = x * x;
  const Cubic t_cubic{1.0, -(k2 - x2), -4.0 * x2, -4.0 * x2 * x2};
  return solve_cubic(t_cubic).back().value;
}

double y0(double x, double c) {
  if (x == 0.0) {
    throw DomainError("y0 is undefined at x = 0");
  }
  return scaled_y0(x, c) / (x * x);
}

double y1(double c) {
  check_ratio(c);
  if (std::abs(c - 1.0) < kUnitRatioTolerance) {
    throw DegenerateCoefficient("y1 is undefined at c = 1");
  }
  const double lead = c * (c - 2.0);  // (1-c)^2 - 1
  const bool above_one = c < 1.0;
  auto in_range = [&](double y) { return above_one ? y > 1.0 : (y > 0.0 && y < 1.0); };

  if (std::abs(lead) < 1e-14) {
    // y^2 + y - 1 = 0
    return 0.5 * (std::sqrt(5.0) - 1.0);
  }
  for (const auto& r : solve_cubic(Cubic{lead, 1.0, 1.0, -1.0})) {
    if (in_range(r.value)) return r.value;
  }
  throw DegenerateCoefficient("no root of the y1 cubic in the required interval for c = " +
                              std::to_string(c));
}

double support_endpoint(double c) {
  check_ratio(c);
  if (std::abs(c - 1.0) < kUnitRatioTolerance) {
    return 2.0;
  }
  const double y = y1(c);
  return (1.0 - c) * std::sqrt(1.0 + y) / (y - 1.0);
}

SupportSolution support_solution(double x, double c) {
  const bool unit = std::abs(c - 1.0) < kUnitRatioTolerance;
  return SupportSolution{x, c, y0(x, c), unit ? std::numeric_limits<double>::quiet_NaN() : y1(c),
                         support_endpoint(c)};
}

}  // namespace aclsd::roots
