#include "aclsd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aclsd/error.hpp"

namespace aclsd::stats {

EmpiricalCdf::EmpiricalCdf(std::vector<double> sorted_values) : values_(std::move(sorted_values)) {
  if (values_.empty()) throw InvalidInput("empirical CDF of an empty sample");
  if (!std::is_sorted(values_.begin(), values_.end())) throw InvalidInput("sample is not sorted");
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCdf::left(double x) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double ReferenceCdf::left(double x) const {
  double jump = 0.0;
  for (const auto& a : atoms) {
    if (a.location == x) jump += a.mass;
  }
  return cdf(x) - jump;
}

KsReport ks_distance(std::span<const double> sample, const ReferenceCdf& reference) {
  if (sample.empty()) throw InvalidInput("KS distance of an empty sample");
  if (!std::is_sorted(sample.begin(), sample.end())) throw InvalidInput("sample is not sorted");

  const double n = static_cast<double>(sample.size());
  KsReport report;
  report.n = sample.size();
  report.location = sample.front();
  std::size_t i = 0;
  while (i < sample.size()) {
    const double x = sample[i];
    std::size_t j = i;
    while (j < sample.size() && sample[j] == x) ++j;
    const double fn_left = static_cast<double>(i) / n;
    const double fn_right = static_cast<double>(j) / n;
    const double dev = std::max(std::abs(fn_right - reference(x)), std::abs(fn_left - reference.left(x)));
    if (dev > report.statistic) {
      report.statistic = dev;
      report.location = x;
    }
    i = j;
  }
  return report;
}

KsReport ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  return ks_distance(sample, ReferenceCdf{cdf, {}});
}

KsReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("KS distance of an empty sample");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw InvalidInput("sample is not sorted");
  }
  // walk the merged order; both ECDFs only change at sample points
  KsReport r;
  r.n = a.size();
  std::size_t i = 0;
  std::size_t j = 0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() || j < b.size()) {
    const double x = j == b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const double d = std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb);
    if (d > r.statistic) {
      r.statistic = d;
      r.location = x;
    }
  }
  return r;
}

namespace {

constexpr int kMaxDepth = 50;
constexpr int kMinDepth = 4;
// Depth alone does not bound the work: an integrand that never settles
// would otherwise branch all the way down everywhere.
constexpr long kMaxEvaluations = 4'000'000;

struct SimpsonState {
  const std::function<double(double)>& f;
  bool exhausted = false;
  long evaluations = 0;
};

double sample(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : 0.0;
}

double simpson_step(SimpsonState& st, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = sample(st.f, lm);
  const double frm = sample(st.f, rm);
  st.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (depth >= kMinDepth && (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= noise)) {
    return left + right + delta / 15.0;
  }
  if (depth >= kMaxDepth || st.evaluations >= kMaxEvaluations || !(a < lm && lm < m && m < rm && rm < b)) {
    st.exhausted = true;
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double quad(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
  if (!(lo < hi)) {
    if (lo == hi) return 0.0;
    throw InvalidInput("quad requires lo < hi");
  }
  if (!(abs_tol > 0.0)) throw InvalidInput("quad requires a positive tolerance");
  SimpsonState st{f};
  const double m = 0.5 * (lo + hi);
  const double flo = sample(f, lo);
  const double fhi = sample(f, hi);
  const double fm = sample(f, m);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
  const double result = simpson_step(st, lo, flo, hi, fhi, m, fm, whole, abs_tol, 0);
  if (st.exhausted) {
    throw AccuracyFailure("adaptive Simpson exhausted its refinement budget", result);
  }
  return result;
}

double quad_arcsine(const std::function<double(double)>& g, double abs_tol) {
  const double pi = std::numbers::pi;
  return quad([&](double theta) { return g(std::cos(theta)); }, 0.0, pi, abs_tol * pi) / pi;
}

}  // namespace aclsd::stats
