#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "aclsd/ensemble.hpp"
#include "aclsd/error.hpp"
#include "aclsd/roots.hpp"
#include "aclsd/stats.hpp"
#include "aclsd/theory.hpp"
#include "aclsd/verify.hpp"

namespace aclsd::cli {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Grid {
  double xmin = -4.0;
  double xmax = 4.0;
  int points = 401;

  void add_to(CLI::App* app) {
    app->add_option("--xmin", xmin, "left end of the x grid")->capture_default_str();
    app->add_option("--xmax", xmax, "right end of the x grid")->capture_default_str();
    app->add_option("--points", points, "number of grid points (>= 2)")->capture_default_str();
  }

  void validate() const {
    if (points < 2) throw UsageError("--points must be at least 2");
    if (!(xmin < xmax)) throw UsageError("--xmin must be smaller than --xmax");
  }

  double at(int i) const {
    if (i == points - 1) return xmax;
    return xmin + (xmax - xmin) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
};

// Writes to --out when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void require_ratio(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("--c must be positive");
}

int cmd_density(double c, const Grid& grid, const std::string& out_path, std::ostream& out) {
  require_ratio(c);
  grid.validate();
  Sink sink(out_path, out);
  *sink << "x,phi\n";
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.at(i);
    *sink << format_double(x) << ',' << format_double(theory::phi_density(x, c)) << '\n';
  }
  return kExitOk;
}

int cmd_cdf(double c, const Grid& grid, const std::string& out_path, std::ostream& out) {
  require_ratio(c);
  grid.validate();
  const theory::LimitLaw law(c);
  const bool atom = law.atom_mass() > 0.0 && grid.xmin <= 0.0 && grid.xmax >= 0.0;
  Sink sink(out_path, out);
  auto row = [&](double x, double f) { *sink << format_double(x) << ',' << format_double(f) << '\n'; };
  *sink << "x,F\n";
  bool atom_done = !atom;
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.at(i);
    if (!atom_done && x >= 0.0) {
      // left and right limits at the atom
      row(0.0, law.cdf_left(0.0));
      row(0.0, law.cdf(0.0));
      atom_done = true;
      if (x == 0.0) continue;
    }
    row(x, law.cdf(x));
  }
  return kExitOk;
}

int cmd_stieltjes(double c, double re, double im, std::ostream& out) {
  require_ratio(c);
  if (!(im > 0.0)) throw UsageError("--im must be positive");
  const std::complex<double> z(re, im);
  const auto p = theory::stieltjes(z, c);
  json j;
  j["command"] = "stieltjes";
  j["c"] = c;
  j["re"] = re;
  j["im"] = im;
  j["re_m"] = p.m.real();
  j["im_m"] = p.m.imag();
  j["residual"] = p.residual;
  j["abs_m_plus_inv_z"] = std::abs(p.m + 1.0 / z);
  out << j.dump(2) << '\n';
  return p.residual <= 1e-10 && p.m.imag() > 0.0 ? kExitOk : kExitFailure;
}

struct SimulateArgs {
  std::size_t N = 0;
  std::size_t T = 0;
  std::size_t tau = 1;
  std::string dist = "real-gaussian";
  double alpha = 3.0;
  std::uint64_t seed = ensemble::kDefaultSeed;
  std::size_t replicates = 1;
  std::size_t threads = 1;
  std::size_t max_n = ensemble::kDefaultMaxDimension;
  std::string out;
  std::string summary;
};

ensemble::EntryDistribution parse_dist(const std::string& name, double alpha) {
  if (name == "pareto-symmetric") {
    ensemble::EntryDistribution d{ensemble::EntryKind::ParetoSymmetric, alpha};
    d.validate();
    return d;
  }
  return ensemble::EntryDistribution::parse(name);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.N == 0 || a.T == 0) throw UsageError("--N and --T must be positive");
  if (a.replicates == 0) throw UsageError("--replicates must be positive");
  const auto start = std::chrono::steady_clock::now();

  ensemble::SimulationConfig cfg;
  cfg.N = a.N;
  cfg.T = a.T;
  cfg.tau = a.tau;
  cfg.dist = parse_dist(a.dist, a.alpha);
  cfg.seed = a.seed;
  cfg.replicates = a.replicates;
  cfg.threads = std::max<std::size_t>(1, a.threads);
  cfg.max_dimension = a.max_n;
  const auto sample = ensemble::simulate_esd(cfg);

  const double c_hat = static_cast<double>(a.N) / static_cast<double>(a.T + a.tau);
  const double atom_expected = c_hat > 1.0 ? 1.0 - 1.0 / c_hat : 0.0;
  double top = 0.0;
  for (double v : sample.values) top = std::max(top, std::abs(v));
  const double thr = 1e-9 * std::max(1.0, top);
  const auto zeros = std::count_if(sample.values.begin(), sample.values.end(), [thr](double v) { return std::abs(v) <= thr; });
  const double atom_observed = static_cast<double>(zeros) / static_cast<double>(sample.size());

  double ks = 0.0;
  std::string reference;
  if (a.tau == 0) {
    // (1/T) X X*: Marchenko-Pastur with ratio N / T
    const theory::MarchenkoPasturLaw mp(c_hat);
    stats::ReferenceCdf ref{[&mp](double x) { return mp.cdf(x); }, {}};
    if (mp.atom_mass() > 0.0) ref.atoms.push_back({0.0, mp.atom_mass()});
    ks = stats::ks_distance(sample.values, ref).statistic;
    reference = "marchenko-pastur";
  } else {
    const theory::LimitLaw law(c_hat);
    stats::ReferenceCdf ref{[&law](double x) { return law.cdf(x); }, {}};
    if (law.atom_mass() > 0.0) ref.atoms.push_back({0.0, law.atom_mass()});
    ks = stats::ks_distance(sample.values, ref).statistic;
    reference = "limit-law";
  }

  Sink sink(a.out, out);
  *sink << "eigenvalue\n";
  for (double v : sample.values) *sink << format_double(v) << '\n';

  const auto runtime = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  json j;
  j["command"] = "simulate";
  j["c"] = c_hat;
  j["c_hat"] = c_hat;
  j["tau"] = a.tau;
  j["N"] = a.N;
  j["T"] = a.T;
  j["dist"] = cfg.dist.name();
  j["seed"] = a.seed;
  j["replicates"] = a.replicates;
  j["ks"] = ks;
  j["atom_expected"] = atom_expected;
  j["atom_observed"] = atom_observed;
  j["reference"] = reference;
  j["runtime_ms"] = runtime.count();
  const std::string text = j.dump(2) + "\n";
  if (!a.summary.empty()) {
    std::ofstream f(a.summary, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open summary file " + a.summary);
    f << text;
  } else if (sink.to_file()) {
    out << text;
  } else {
    err << text;
  }
  return kExitOk;
}

int cmd_cmatrix(std::size_t n, std::size_t tau, const std::string& out_path, std::ostream& out) {
  if (n == 0) throw UsageError("--n must be positive");
  if (tau == 0) throw UsageError("--tau must be at least 1 for the band matrix");
  const auto closed = ensemble::c_spectrum_closed(n, tau).values;
  const auto solver = ensemble::hermitian_eigs(ensemble::build_c(n, tau)).values;
  Sink sink(out_path, out);
  *sink << "closed_form,solver\n";
  for (std::size_t i = 0; i < n; ++i) *sink << format_double(closed[i]) << ',' << format_double(solver[i]) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& suite, bool inject_fault, std::size_t threads, std::ostream& out) {
  if (suite != "all" &&
      std::find(verify::suite_names().begin(), verify::suite_names().end(), suite) == verify::suite_names().end()) {
    throw UsageError("unknown suite " + suite);
  }
  verify::Options opt;
  opt.inject_psi_fault = inject_fault;
  opt.threads = std::max<std::size_t>(1, threads);
  const auto checks = verify::run_suite(suite, opt);
  std::size_t passed = 0;
  for (const auto& c : checks) {
    char head[96];
    std::snprintf(head, sizeof head, "%-4s  %-8s  %-26s %7.2fs  ", c.pass ? "PASS" : "FAIL", c.suite.c_str(),
                  c.name.c_str(), c.seconds);
    out << head << c.detail << '\n';
    passed += c.pass ? 1 : 0;
  }
  out << passed << '/' << checks.size() << " checks passed\n";
  return passed == checks.size() ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limit laws and simulation of symmetrized lag-tau auto-covariance spectra", "aclsd"};
  app.require_subcommand(1, 1);

  double c = 0.0;
  Grid grid;
  std::string out_path;

  auto* density = app.add_subcommand("density", "limit density on a grid, CSV x,phi");
  density->add_option("--c", c, "concentration N/(T+tau)")->required();
  grid.add_to(density);
  density->add_option("--out", out_path, "output file (default stdout)");

  auto* cdf = app.add_subcommand("cdf", "limit distribution function on a grid, CSV x,F");
  cdf->add_option("--c", c, "concentration N/(T+tau)")->required();
  grid.add_to(cdf);
  cdf->add_option("--out", out_path, "output file (default stdout)");

  double re = 0.0;
  double im = 1.0;
  auto* stj = app.add_subcommand("stieltjes", "Stieltjes transform m(re + i im), JSON");
  stj->add_option("--c", c, "concentration N/(T+tau)")->required();
  stj->add_option("--re", re, "real part of z")->capture_default_str();
  stj->add_option("--im", im, "imaginary part of z (> 0)")->capture_default_str();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "pooled eigenvalues of M_N, CSV eigenvalue, plus a JSON summary");
  simulate->add_option("--N", sim.N, "dimension")->required();
  simulate->add_option("--T", sim.T, "number of lagged pairs")->required();
  simulate->add_option("--tau", sim.tau, "lag (0 gives the sample covariance)")->capture_default_str();
  simulate->add_option("--dist", sim.dist,
                       "complex-gaussian | real-gaussian | rademacher | pareto-symmetric[(alpha)]")
      ->capture_default_str();
  simulate->add_option("--alpha", sim.alpha, "tail index for pareto-symmetric (> 2)")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "master seed")->default_str("0x5EED");
  simulate->add_option("--replicates", sim.replicates, "independent draws pooled")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "worker threads across replicates")->capture_default_str();
  simulate->add_option("--max-n", sim.max_n, "largest N accepted")->capture_default_str();
  simulate->add_option("--out", sim.out, "eigenvalue CSV file (default stdout)");
  simulate->add_option("--summary", sim.summary,
                       "summary JSON file (default: stdout when --out is given, stderr otherwise)");

  std::size_t n = 0;
  std::size_t tau = 1;
  auto* cmatrix = app.add_subcommand("cmatrix", "band matrix spectrum, closed form beside the dense solver");
  cmatrix->add_option("--n", n, "matrix size")->required();
  cmatrix->add_option("--tau", tau, "band offset (>= 1)")->capture_default_str();
  cmatrix->add_option("--out", out_path, "output file (default stdout)");

  std::string suite = "all";
  bool inject = false;
  std::size_t verify_threads = 1;
  auto* ver = app.add_subcommand("verify", "run the invariant suites and print a pass/fail table");
  ver->add_option("--suite", suite, "roots | theory | ensemble | stats | all")->capture_default_str();
  ver->add_flag("--inject-psi-fault", inject, "evaluate psi on the wrong pole (the suite must then fail)");
  ver->add_option("--threads", verify_threads, "worker threads for the simulations")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*density) return cmd_density(c, grid, out_path, out);
    if (*cdf) return cmd_cdf(c, grid, out_path, out);
    if (*stj) return cmd_stieltjes(c, re, im, out);
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*cmatrix) return cmd_cmatrix(n, tau, out_path, out);
    if (*ver) return cmd_verify(suite, inject, verify_threads, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << " (raise --max-n to allow it)\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace aclsd::cli
