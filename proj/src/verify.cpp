#include "aclsd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "aclsd/ensemble.hpp"
#include "aclsd/error.hpp"
#include "aclsd/oracles.hpp"
#include "aclsd/roots.hpp"
#include "aclsd/stats.hpp"
#include "aclsd/theory.hpp"

namespace aclsd::verify {
namespace {

using cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

class Recorder {
 public:
  Recorder(std::string suite, std::vector<Check>& out) : suite_(std::move(suite)), out_(out) {}

  void run(const std::string& name, int criterion, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Check c{suite_, name, criterion, false, "", 0.0};
    try {
      auto o = body();
      c.pass = o.pass;
      c.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out_.push_back(std::move(c));
  }

 private:
  std::string suite_;
  std::vector<Check>& out_;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

stats::ReferenceCdf limit_reference(const theory::LimitLaw& law) {
  stats::ReferenceCdf ref{[&law](double x) { return law.cdf(x); }, {}};
  if (law.atom_mass() > 0.0) ref.atoms.push_back({0.0, law.atom_mass()});
  return ref;
}

// ---- roots -----------------------------------------------------------------

void roots_suite(Recorder& rec) {
  rec.run("y1_cubic_residual", 0, [] {
    double worst = 0.0;
    for (int i = 1; i <= 30; ++i) {
      if (i == 10) continue;
      const double c = 0.1 * i;
      const double y = roots::y1(c);
      const double k = (1.0 - c) * (1.0 - c) - 1.0;
      worst = std::max(worst, std::abs(((k * y + 1.0) * y + 1.0) * y - 1.0));
    }
    return Outcome{worst <= 1e-10, fmt("max residual %.3g", worst)};
  });

  rec.run("endpoint_values", 4, [] {
    const double a1 = roots::support_endpoint(1.0);
    const double a2 = roots::support_endpoint(2.0);
    const double y12 = roots::y1(2.0);
    const double y_exact = (std::sqrt(5.0) - 1.0) / 2.0;
    const bool ok = a1 == 2.0 && std::abs(a2 - 3.3302) <= 1e-3 && std::abs(y12 - y_exact) <= 1e-12;
    return Outcome{ok, fmt("a(1)=%.17g a(2)=%.6f |y1(2)-(sqrt5-1)/2|=%.3g", a1, a2, std::abs(y12 - y_exact))};
  });

  rec.run("endpoint_continuity", 0, [] {
    const double lo = roots::support_endpoint(1.0 - 1e-3);
    const double hi = roots::support_endpoint(1.0 + 1e-3);
    const bool ok = std::abs(lo - 2.0) <= 0.05 && std::abs(hi - 2.0) <= 0.05;
    return Outcome{ok, fmt("a(1-1e-3)=%.6f a(1+1e-3)=%.6f", lo, hi)};
  });

  rec.run("edge_radicand", 0, [] {
    double worst = 0.0;
    for (double c : {0.2, 0.5, 0.7, 0.9, 1.0, 1.1, 1.5, 2.0, 2.5, 3.0}) {
      const double a = roots::support_endpoint(c);
      for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
        worst = std::min(worst, theory::density_radicand(a * (1.0 - eps), c));
      }
    }
    return Outcome{worst >= -1e-12, fmt("min radicand below the edge %.3g", worst)};
  });

  rec.run("solve_cubic_vs_scan", 0, [] {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coef(-10.0, 10.0);
    std::uniform_real_distribution<double> lead(0.1, 10.0);
    double worst = 0.0;
    int count_mismatch = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      roots::Cubic p{lead(gen) * (gen() & 1 ? 1.0 : -1.0), coef(gen), coef(gen), coef(gen)};
      const auto solved = roots::solve_cubic(p);
      const auto scanned = oracles::cubic_roots_scan(p);
      std::size_t odd = 0;
      for (const auto& r : solved) odd += r.multiplicity % 2;
      if (odd != scanned.size()) ++count_mismatch;
      for (double s : scanned) {
        double best = INFINITY;
        for (const auto& r : solved) best = std::min(best, std::abs(r.value - s) / std::max(1.0, std::abs(s)));
        worst = std::max(worst, best);
      }
    }
    return Outcome{count_mismatch == 0 && worst <= 1e-10,
                   fmt("1000 cubics: %d root-count mismatches, max rel diff %.3g", count_mismatch, worst)};
  });
}

// ---- theory ----------------------------------------------------------------

void theory_suite(Recorder& rec, const Options& opt) {
  const double cs_grid[] = {0.2, 0.5, 1.0, 2.0, 2.5};

  rec.run("quartic_residual", 3, [&] {
    double worst = 0.0;
    for (double c : cs_grid) {
      for (int i = -20; i <= 20; ++i) {
        for (double y : {1e-3, 0.1, 1.0}) worst = std::max(worst, theory::stieltjes(cplx(0.25 * i, y), c).residual);
      }
    }
    return Outcome{worst <= 1e-10, fmt("max residual %.3g over 615 points", worst)};
  });

  rec.run("nevanlinna", 3, [&] {
    double min_im = INFINITY;
    for (double c : cs_grid) {
      for (int i = -20; i <= 20; ++i) {
        for (double y : {1e-3, 0.1, 1.0}) min_im = std::min(min_im, theory::stieltjes(cplx(0.25 * i, y), c).m.imag());
      }
    }
    return Outcome{min_im > 0.0, fmt("min Im m %.3g", min_im)};
  });

  rec.run("large_z_asymptote", 0, [] {
    double worst = 0.0;
    for (double c : {0.5, 2.0}) {
      const cplx z(3e3, 4e3);
      const cplx m = theory::stieltjes(z, c).m;
      worst = std::max(worst, std::abs(m + 1.0 / z) * std::norm(z));
    }
    // m + 1/z = -E[x]/z^2 - ..., and the law is centred, so |z|^2 |m + 1/z| is small
    return Outcome{worst <= 1e-2, fmt("max |z|^2 |m + 1/z| = %.3g at |z| = 5000", worst)};
  });

  rec.run("density_mass", 4, [] {
    std::string detail;
    bool ok = true;
    for (double c : {0.2, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5}) {
      const theory::LimitLaw law(c);
      const double err = std::abs(law.continuous_mass_quadrature() - std::min(1.0, 1.0 / c));
      ok = ok && err <= (c == 1.0 ? 1e-4 : 1e-6);
      detail += fmt("c=%g:%.2g ", c, err);
    }
    return Outcome{ok, detail};
  });

  rec.run("density_symmetry", 0, [] {
    int bad = 0;
    for (double c : {0.2, 0.5, 1.0, 2.0, 2.5}) {
      for (int i = 0; i <= 400; ++i) {
        const double x = 0.01 * i;
        if (theory::phi_density(x, c) != theory::phi_density(-x, c)) ++bad;
      }
    }
    return Outcome{bad == 0, fmt("%d asymmetric points", bad)};
  });

  rec.run("inversion_agreement", 5, [] {
    double worst = 0.0;
    std::string detail;
    for (double c : {0.5, 1.0, 2.0}) {
      const double a = roots::support_endpoint(c);
      double w = 0.0;
      for (double ax = 0.05; ax <= a; ax += 0.02) {
        for (double x : {ax, -ax}) {
          w = std::max(w, std::abs(theory::phi_density(x, c) - theory::density_via_inversion(x, c, 1e-6)));
        }
      }
      worst = std::max(worst, w);
      detail += fmt("c=%g:%.2g ", c, w);
    }
    return Outcome{worst <= 1e-4, detail};
  });

  const auto selection = opt.inject_psi_fault ? theory::PoleSelection::Outside : theory::PoleSelection::Inside;

  rec.run("psi_vs_quadrature", 6, [selection] {
    std::vector<cplx> us = {0.1, -0.1, 0.5, -0.5, 0.9, -0.9};
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      // half inside the unit disc, half in the annulus 1.05 < |u| < 3; the
      // outer ones stay clear of the real axis, where the integrand has a pole
      const bool outer = i % 2 == 1;
      const double r = outer ? 1.05 + 1.95 * unit(gen) : 0.05 + 0.9 * unit(gen);
      double arg = 2.0 * std::numbers::pi * unit(gen);
      if (outer) {
        const double margin = 0.2;
        arg = margin + (std::numbers::pi - 2.0 * margin) * unit(gen);
        if (gen() & 1) arg = -arg;
      }
      us.push_back(std::polar(r, arg));
    }
    double worst = 0.0;
    for (const cplx& u : us) {
      for (double y : {0.5, 1.0, 2.0}) {
        const cplx closed = theory::psi(u, y, selection).value;
        worst = std::max(worst, std::abs(closed - oracles::psi_quadrature(u, y)));
      }
    }
    return Outcome{worst <= 1e-8, fmt("max |residue - quadrature| %.3g over %zu u values", worst, us.size())};
  });

  rec.run("self_consistency", 6, [selection] {
    double worst = 0.0;
    for (double c : {0.5, 2.0}) {
      for (cplx z : {cplx(1.0, 0.5), cplx(0.0, 2.0), cplx(-1.0, 1.0)}) {
        worst = std::max(worst, theory::self_consistency_residual(z, c, selection));
      }
    }
    return Outcome{worst <= 1e-8, fmt("max |z - psi(...)| %.3g", worst)};
  });

  rec.run("cdf_monotone_reflection", 0, [] {
    double worst_reflect = 0.0;
    double worst_drop = 0.0;
    for (double c : {0.2, 0.5, 1.0, 2.0, 2.5}) {
      const theory::LimitLaw law(c);
      const double a = law.support_endpoint();
      double prev = -1.0;
      for (int i = 0; i <= 400; ++i) {
        const double x = -1.1 * a + 2.2 * a * i / 400.0;
        const double f = law.cdf(x);
        worst_drop = std::max(worst_drop, prev - f);
        prev = f;
        if (x > 0.0) worst_reflect = std::max(worst_reflect, std::abs(law.cdf_left(-x) - (1.0 - law.cdf(x))));
      }
    }
    return Outcome{worst_drop <= 0.0 && worst_reflect <= 1e-8,
                   fmt("max decrease %.3g, max |F(-x-) - (1 - F(x))| %.3g", worst_drop, worst_reflect)};
  });

  rec.run("cdf_atom", 0, [] {
    const theory::LimitLaw law(2.0);
    const double jump = law.cdf(0.0) - law.cdf_left(0.0);
    const double top = law.cdf(law.support_endpoint());
    return Outcome{std::abs(jump - 0.5) <= 1e-12 && top == 1.0, fmt("jump at 0 %.15g, F(a) %.17g", jump, top)};
  });

  rec.run("mp_normalization", 0, [] {
    double worst = 0.0;
    for (double c : {0.25, 0.5, 2.0}) {
      const theory::MarchenkoPasturLaw mp(c);
      const double just_below = mp.cdf(mp.upper() * (1.0 - 1e-14));
      worst = std::max(worst, std::abs(just_below - 1.0));
    }
    return Outcome{worst <= 1e-8, fmt("max |F(upper-) - 1| %.3g", worst)};
  });
}

// ---- ensemble --------------------------------------------------------------

void ensemble_suite(Recorder& rec, const Options& opt) {
  rec.run("band_oracle", 1, [] {
    const auto start = Clock::now();
    double worst = 0.0;
    for (std::size_t n : {16, 64, 257, 1000}) {
      for (std::size_t tau : {1, 2, 3, 5}) {
        const auto closed = ensemble::c_spectrum_closed(n, tau).values;
        const auto dense = ensemble::hermitian_eigs(ensemble::build_c(n, tau)).values;
        if (closed.size() != dense.size()) return Outcome{false, fmt("size mismatch at n=%zu tau=%zu", n, tau)};
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(closed[i] - dense[i]));
      }
    }
    const double secs = seconds_since(start);
    return Outcome{worst <= 1e-9 && secs <= 60.0, fmt("max error %.3g, %.1f s", worst, secs)};
  });

  rec.run("band_single_chain_tau1", 1, [] {
    double worst = 0.0;
    for (std::size_t n : {16, 64, 257, 1000}) {
      const auto closed = ensemble::c_spectrum_closed(n, 1).values;
      const auto chain = ensemble::c_spectrum_single_chain(n, 1);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(closed[i] - chain[i]));
    }
    return Outcome{worst <= 1e-12, fmt("max difference %.3g", worst)};
  });

  rec.run("arcsine_limit", 2, [] {
    double worst = 0.0;
    for (std::size_t tau : {1, 2, 3}) {
      const auto s = ensemble::hermitian_eigs(ensemble::build_c(2000, tau)).values;
      worst = std::max(worst, stats::ks_distance(s, theory::arcsine_cdf).statistic);
    }
    return Outcome{worst <= 0.01, fmt("max KS %.4g", worst)};
  });

  rec.run("construction_paths", 10, [] {
    std::mt19937_64 gen(99);
    double worst = 0.0;
    const ensemble::EntryKind kinds[] = {ensemble::EntryKind::ComplexGaussian, ensemble::EntryKind::RealGaussian,
                                         ensemble::EntryKind::Rademacher, ensemble::EntryKind::ParetoSymmetric};
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = 1 + gen() % 30;
      const std::size_t t = 1 + gen() % 60;
      const std::size_t tau = gen() % 5;
      const ensemble::EntryDistribution dist{kinds[i % 4], 3.0};
      const auto x = ensemble::sample_data(n, t, tau, dist, gen());
      const auto outer = ensemble::lagged_outer_product_sum(x, tau);
      const auto prod = ensemble::band_product(x, tau);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, std::abs(outer.at(r, c) - prod.at(r, c)));
      }
    }
    return Outcome{worst <= 1e-10, fmt("max entry difference %.3g over 20 instances", worst)};
  });

  rec.run("hermitian_spectra", 0, [] {
    const auto x = ensemble::sample_data(40, 80, 2, {ensemble::EntryKind::ComplexGaussian, 0.0}, 5);
    const auto m = ensemble::build_m(x, 2);
    const double defect = m.values.hermitian_defect();
    const auto eig = ensemble::hermitian_eigs(m.values).values;
    double tr = 0.0;
    for (double v : eig) tr += v;
    const double trace_err = std::abs(tr - m.values.trace());
    return Outcome{defect <= 1e-12 && trace_err <= 1e-10,
                   fmt("hermitian defect %.3g, |sum eig - trace| %.3g", defect, trace_err)};
  });

  auto mc = [&opt](std::size_t n, std::size_t t, std::size_t tau, ensemble::EntryDistribution dist) {
    ensemble::SimulationConfig cfg;
    cfg.N = n;
    cfg.T = t;
    cfg.tau = tau;
    cfg.dist = dist;
    cfg.seed = 42;
    cfg.threads = opt.threads;
    return ensemble::simulate_esd(cfg).values;
  };
  const ensemble::EntryDistribution gauss{ensemble::EntryKind::ComplexGaussian, 0.0};

  std::vector<std::vector<double>> by_tau(4);
  for (std::size_t tau : {1, 2, 3}) {
    rec.run(fmt("mc_lsd_tau%zu", tau), 7, [&, tau] {
      const auto start = Clock::now();
      by_tau[tau] = mc(500, 1000, tau, gauss);
      const double secs = seconds_since(start);
      const theory::LimitLaw law(500.0 / (1000.0 + tau));
      const double ks = stats::ks_distance(by_tau[tau], limit_reference(law)).statistic;
      return Outcome{ks <= 0.05 && secs <= 120.0, fmt("KS %.4g, %.1f s", ks, secs)};
    });
  }

  rec.run("tau_invariance", 0, [&] {
    double worst = 0.0;
    for (std::size_t a = 1; a <= 3; ++a) {
      for (std::size_t b = a + 1; b <= 3; ++b) {
        if (by_tau[a].empty() || by_tau[b].empty()) return Outcome{false, "missing simulation"};
        worst = std::max(worst, stats::ks_two_sample(by_tau[a], by_tau[b]).statistic);
      }
    }
    return Outcome{worst <= 0.05, fmt("max pairwise KS %.4g", worst)};
  });

  rec.run("mc_atom", 7, [&] {
    const auto start = Clock::now();
    const auto s = mc(1000, 500, 1, gauss);
    const double secs = seconds_since(start);
    const double c_hat = 1000.0 / 501.0;
    double top = 0.0;
    for (double v : s) top = std::max(top, std::abs(v));
    const double thr = 1e-9 * std::max(1.0, top);
    std::vector<double> nonzero;
    for (double v : s) {
      if (std::abs(v) > thr) nonzero.push_back(v);
    }
    const double zero_frac = 1.0 - static_cast<double>(nonzero.size()) / static_cast<double>(s.size());
    const double expected = 1.0 - 1.0 / c_hat;
    const theory::LimitLaw law(c_hat);
    const double ks = stats::ks_distance(nonzero, [&law](double x) { return law.continuous_cdf(x); }).statistic;
    const bool ok = std::abs(zero_frac - expected) <= 0.02 && ks <= 0.06 && secs <= 120.0;
    return Outcome{ok, fmt("zero fraction %.4f (expected %.4f), KS nonzero %.4g, %.1f s", zero_frac, expected, ks, secs)};
  });

  rec.run("mp_reduction", 8, [&] {
    const auto s = mc(500, 1000, 0, gauss);
    const double ks = stats::ks_distance(s, [](double x) { return theory::mp_cdf(x, 0.5); }).statistic;
    return Outcome{ks <= 0.05, fmt("KS vs MP %.4g", ks)};
  });
}

// ---- stats -----------------------------------------------------------------

void stats_suite(Recorder& rec) {
  rec.run("quad_examples", 0, [] {
    const double e1 = std::abs(stats::quad([](double x) { return x * x; }, 0.0, 1.0, 1e-13) - 1.0 / 3.0);
    const double e2 = std::abs(stats::quad_arcsine([](double) { return 1.0; }, 1e-12) - 1.0);
    const double u = 0.5;
    const double e3 =
        std::abs(stats::quad_arcsine([u](double t) { return t / (1.0 + u * t); }, 1e-12) - 2.0 * (1.0 - 2.0 / std::sqrt(3.0)));
    return Outcome{e1 <= 1e-12 && e2 <= 1e-10 && e3 <= 1e-10, fmt("errors %.2g %.2g %.2g", e1, e2, e3)};
  });

  rec.run("quad_split", 0, [] {
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    const double whole = stats::quad(f, 0.0, 4.0, 1e-10);
    const double split = stats::quad(f, 0.0, 1.3, 1e-10) + stats::quad(f, 1.3, 4.0, 1e-10);
    return Outcome{std::abs(whole - split) <= 2e-10, fmt("difference %.3g", std::abs(whole - split))};
  });

  rec.run("ks_examples", 0, [] {
    std::vector<double> q;
    const std::size_t n = 1000;
    for (std::size_t i = 1; i <= n; ++i) q.push_back(std::cos(std::numbers::pi * (1.0 - (i - 0.5) / n)));
    const double k1 = stats::ks_distance(q, theory::arcsine_cdf).statistic;
    const std::vector<double> zeros = {0.0, 0.0, 0.0};
    const double k2 = stats::ks_distance(zeros, theory::arcsine_cdf).statistic;
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> us(10000);
    for (auto& v : us) v = unif(gen);
    std::sort(us.begin(), us.end());
    const double k3 = stats::ks_distance(us, [](double x) { return std::clamp(x, 0.0, 1.0); }).statistic;
    const bool ok = k1 <= 1.0 / n && std::abs(k2 - 0.5) <= 1e-15 && k3 <= 0.02;
    return Outcome{ok, fmt("quantiles %.3g, zeros %.3g, uniform %.3g", k1, k2, k3)};
  });

  rec.run("ks_shift_and_atom", 0, [] {
    std::vector<double> s = {0.0, 0.0, 0.0, 0.0};
    auto mix = [](double x) {
      // half uniform(-1, 1), half atom at 0
      const double cont = 0.5 * std::clamp((x + 1.0) / 2.0, 0.0, 1.0);
      return cont + (x >= 0.0 ? 0.5 : 0.0);
    };
    const stats::ReferenceCdf ref{mix, {{0.0, 0.5}}};
    const double base = stats::ks_distance(s, ref).statistic;
    std::vector<double> shifted = s;
    for (auto& v : shifted) v += 3.0;
    const stats::ReferenceCdf ref_shift{[&](double x) { return mix(x - 3.0); }, {{3.0, 0.5}}};
    const double moved = stats::ks_distance(shifted, ref_shift).statistic;
    // F_n jumps 0 -> 1 at 0 while F jumps 0.25 -> 0.75; reading F(0) in
    // place of F(0-) would give 0.75
    const double expected = 0.25;
    return Outcome{std::abs(base - expected) <= 1e-15 && std::abs(base - moved) <= 1e-15,
                   fmt("KS %.17g, shifted %.17g", base, moved)};
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"roots", "theory", "ensemble", "stats"};
  return names;
}

std::vector<Check> run_suite(std::string_view suite, const Options& options) {
  std::vector<Check> out;
  if (suite == "all") {
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, options);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  Recorder rec{std::string(suite), out};
  if (suite == "roots") {
    roots_suite(rec);
  } else if (suite == "theory") {
    theory_suite(rec, options);
  } else if (suite == "ensemble") {
    ensemble_suite(rec, options);
  } else if (suite == "stats") {
    stats_suite(rec);
  } else {
    throw InvalidInput("unknown suite: " + std::string(suite));
  }
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace aclsd::verify
