#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace aclsd::stats {

// Right-continuous empirical CDF of a sorted sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> sorted_values);

  double operator()(double x) const;  // #{v <= x} / n
  double left(double x) const;        // #{v < x} / n
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct Atom {
  double location;
  double mass;
};

// Reference law for goodness-of-fit. `cdf` must be the full right-continuous
// CDF (atoms included); jumps are declared explicitly so that left limits are
// exact instead of being detected numerically.
struct ReferenceCdf {
  std::function<double(double)> cdf;
  std::vector<Atom> atoms;

  double operator()(double x) const { return cdf(x); }
  double left(double x) const;
};

struct KsReport {
  double statistic = 0.0;
  double location = 0.0;  // sample point where the supremum is attained
  std::size_t n = 0;
};

// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F|, evaluated at every
// sample point and at its left limit. Throws InvalidInput on an empty or
// unsorted sample.
KsReport ks_distance(std::span<const double> sorted_sample, const ReferenceCdf& reference);
KsReport ks_distance(std::span<const double> sorted_sample, const std::function<double(double)>& cdf);

// sup |F_a - F_b| over two sorted samples; n in the report is |a|.
KsReport ks_two_sample(std::span<const double> a, std::span<const double> b);

// Adaptive Simpson on [lo, hi] with absolute tolerance `abs_tol`. Endpoint
// samples that are not finite are treated as 0, which is adequate for
// integrable endpoint singularities but converges slowly; prefer a
// substitution. Throws AccuracyFailure (with the best estimate) when the
// refinement depth or the evaluation budget is exhausted.
double quad(const std::function<double(double)>& f, double lo, double hi, double abs_tol);

// Integral of g against the arcsine law on (-1, 1), via t = cos(theta).
double quad_arcsine(const std::function<double(double)>& g, double abs_tol);

}  // namespace aclsd::stats
