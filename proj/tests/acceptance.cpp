// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "aclsd/ensemble.hpp"
#include "aclsd/stats.hpp"
#include "aclsd/theory.hpp"
#include "aclsd/verify.hpp"
#include "commands.hpp"

using namespace aclsd;
using Clock = std::chrono::steady_clock;

namespace {

struct Line {
  bool pass = true;
  std::string detail;

  void add(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kTitles[] = {"",
                         "band-matrix oracle",
                         "arcsine limit of the band matrix",
                         "quartic residual of the transform",
                         "density mass and support endpoints",
                         "inversion agreement",
                         "psi identities",
                         "Monte Carlo limit law",
                         "Marchenko-Pastur reduction at tau = 0",
                         "heavy-tailed entries, alpha = 2.1",
                         "construction paths and determinism"};

}  // namespace

int main() {
  std::map<int, Line> lines;

  const auto checks = verify::run_suite("all");
  for (const auto& c : checks) {
    if (c.criterion > 0) lines[c.criterion].add(c.pass, c.name + ": " + c.detail);
  }

  {
    Line& l = lines[9];
    ensemble::SimulationConfig cfg;
    cfg.N = 500;
    cfg.T = 1000;
    cfg.tau = 1;
    cfg.seed = 42;
    cfg.dist = {ensemble::EntryKind::ParetoSymmetric, 2.1};
    const auto s = ensemble::simulate_esd(cfg);
    const theory::LimitLaw law(500.0 / 1001.0);
    const double ks = stats::ks_distance(s.values, [&](double x) { return law.cdf(x); }).statistic;
    char buf[64];
    std::snprintf(buf, sizeof buf, "KS %.4g (bound 0.08)", ks);
    l.add(ks <= 0.08, buf);
  }

  {
    Line& l = lines[10];
    const std::vector<std::vector<std::string>> commands = {
        {"density", "--c", "0.7", "--points", "101"},
        {"cdf", "--c", "2.5", "--points", "101"},
        {"cmatrix", "--n", "64", "--tau", "3"},
        {"simulate", "--N", "200", "--T", "300", "--tau", "2", "--seed", "42", "--dist", "complex-gaussian"},
        {"simulate", "--N", "120", "--T", "100", "--seed", "7", "--replicates", "3", "--threads", "2"},
    };
    bool same = true;
    for (const auto& args : commands) {
      const auto a = run_cli(args);
      const auto b = run_cli(args);
      same = same && a.code == 0 && a.out == b.out;
      if (args[0] == "simulate") {
        auto ja = nlohmann::json::parse(a.err);
        auto jb = nlohmann::json::parse(b.err);
        ja.erase("runtime_ms");
        jb.erase("runtime_ms");
        same = same && ja.dump() == jb.dump();
      }
    }
    l.add(same, "repeated CLI runs byte-identical");

    const auto start = Clock::now();
    const auto v = run_cli({"verify", "--suite", "all"});
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "verify --suite all exit %d in %.1f s", v.code, secs);
    l.add(v.code == 0 && secs <= 900.0, buf);
    if (v.code != 0) std::cerr << v.out;
  }

  bool all = true;
  for (int k = 1; k <= 10; ++k) {
    const auto it = lines.find(k);
    const bool pass = it != lines.end() && it->second.pass;
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << k << " (" << kTitles[k]
              << "): " << (it == lines.end() ? "no checks ran" : it->second.detail) << '\n';
  }
  return all ? 0 : 1;
}
