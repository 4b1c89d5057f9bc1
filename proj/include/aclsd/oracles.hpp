#pragma once

#include <complex>
#include <vector>

#include "aclsd/roots.hpp"

// Slow, independent reference computations used by the verification suites.
namespace aclsd::oracles {

// psi(u) = -1/u + y (1/pi) int_0^pi cos(theta) / (1 + u cos(theta)) dtheta,
// integrated directly. u must keep 1 + u t away from 0 on [-1, 1].
std::complex<double> psi_quadrature(std::complex<double> u, double y, double tol = 1e-12);

// Real roots of a cubic located by sign changes on a grid that is
// logarithmic in |y| on both sides of 0, refined by bisection. Misses
// roots of even multiplicity.
std::vector<double> cubic_roots_scan(const roots::Cubic& p, double min_abs = 1e-8, double max_abs = 1e8,
                                     int points_per_decade = 200);

}  // namespace aclsd::oracles
