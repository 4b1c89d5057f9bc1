#pragma once

#include <vector>

namespace aclsd::roots {

// a3 y^3 + a2 y^2 + a1 y + a0 with real coefficients.
struct Cubic {
  double a3 = 1.0;
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  double operator()(double y) const { return ((a3 * y + a2) * y + a1) * y + a0; }
  double derivative(double y) const { return (3.0 * a3 * y + 2.0 * a2) * y + a1; }
  // max(1, |a3|, |a2|, |a1|, |a0|); the residual bound is relative to this.
  double scale() const;
};

struct RealRoot {
  double value;
  int multiplicity;
};

// All real roots, ascending, each polished by damped Newton steps. Roots
// closer than 1e-9 (relative) or that straddle a double critical point are
// merged and reported once with their combined multiplicity.
// Throws InvalidInput for non-finite coefficients or a3 == 0.
std::vector<RealRoot> solve_cubic(const Cubic& cubic);

// Largest real root of y^3 - ((1-c)^2 - x^2)/x^2 y^2 - 4/x^2 y - 4/x^2.
// Even in x. Throws DomainError at x = 0, InvalidInput for c <= 0.
double y0(double x, double c);

// Same root expressed as t = x^2 y0, which stays well scaled as x -> 0:
// t^3 - ((1-c)^2 - x^2) t^2 - 4 x^2 t - 4 x^4 = 0. Defined at x = 0 too.
double scaled_y0(double x, double c);

// Real root of ((1-c)^2 - 1) y^3 + y^2 + y - 1 with y1 > 1 for c < 1 and
// y1 in (0, 1) for c > 1. Throws DegenerateCoefficient at c = 1.
double y1(double c);

// Right edge a(c) of the continuous spectrum; a(1) = 2 exactly and any
// |c - 1| < 1e-8 is treated as c = 1.
double support_endpoint(double c);

inline constexpr double kUnitRatioTolerance = 1e-8;

struct SupportSolution {
  double x;
  double c;
  double y0;
  double y1;  // NaN when c is treated as 1
  double a;
};

SupportSolution support_solution(double x, double c);

}  // namespace aclsd::roots
