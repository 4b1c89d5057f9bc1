#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"

using aclsd::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("density csv") {
  const auto r = call({"density", "--c", "1", "--xmin", "-2", "--xmax", "2", "--points", "5"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"x", "phi"});
  CHECK(rows[1][1] == "0");
  CHECK(rows[5][1] == "0");
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("density value at x = 1 for c = 2") {
  const auto r = call({"density", "--c", "2", "--xmin", "0", "--xmax", "2", "--points", "3"});
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[2][0] == "1");
  CHECK(std::abs(std::stod(rows[2][1]) - 0.0964941665) <= 1e-9);
}

TEST_CASE("cdf csv carries both limits at the atom") {
  const auto r = call({"cdf", "--c", "2", "--xmin", "-4", "--xmax", "4", "--points", "9"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "F"});
  int zeros = 0;
  double left = -1.0, right = -1.0, prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double f = std::stod(rows[i][1]);
    CHECK(f >= prev);
    prev = f;
    if (rows[i][0] == "0") {
      (zeros == 0 ? left : right) = f;
      ++zeros;
    }
  }
  CHECK(zeros == 2);
  CHECK(right - left == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rows.back()[1] == "1");
  CHECK(rows.size() == 11);
}

TEST_CASE("cdf without atom has a single zero row") {
  const auto r = call({"cdf", "--c", "0.5", "--xmin", "-2", "--xmax", "2", "--points", "5"});
  CHECK(csv_rows(r.out).size() == 6);
}

TEST_CASE("stieltjes json") {
  const auto r = call({"stieltjes", "--c", "0.5", "--re", "1", "--im", "0.5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["residual"].get<double>() <= 1e-10);
  CHECK(j["im_m"].get<double>() > 0.0);
  const auto far = nlohmann::json::parse(call({"stieltjes", "--c", "2", "--re", "0", "--im", "1e6"}).out);
  CHECK(far["abs_m_plus_inv_z"].get<double>() <= 1e-10);
  CHECK(call({"stieltjes", "--c", "2", "--im", "0"}).code == 2);
}

TEST_CASE("simulate is byte deterministic") {
  const std::vector<std::string> args = {"simulate", "--N", "60", "--T", "120", "--tau", "2", "--seed", "42"};
  const auto a = call(args);
  const auto b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(csv_rows(a.out).front() == std::vector<std::string>{"eigenvalue"});
  CHECK(csv_rows(a.out).size() == 61);
  auto ja = nlohmann::json::parse(a.err);
  auto jb = nlohmann::json::parse(b.err);
  for (const char* key : {"command", "c", "c_hat", "tau", "N", "T", "dist", "seed", "replicates", "ks",
                          "atom_expected", "atom_observed", "runtime_ms"}) {
    CHECK(ja.contains(key));
  }
  ja.erase("runtime_ms");
  jb.erase("runtime_ms");
  CHECK(ja.dump() == jb.dump());
  CHECK(ja["seed"] == 42);
  CHECK(ja["dist"] == "real-gaussian");
}

TEST_CASE("simulate writes files and keeps the default seed") {
  const auto dir = std::filesystem::temp_directory_path() / "aclsd_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "eig.csv").string();
  const auto sum = (dir / "sum.json").string();
  const auto r = call({"simulate", "--N", "30", "--T", "15", "--out", csv, "--summary", sum});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(sum);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["seed"] == 0x5EED);
  CHECK(j["atom_expected"].get<double>() == doctest::Approx(1.0 - 16.0 / 30.0));  // c = 30 / (15 + 1)
  CHECK(j["atom_observed"].get<double>() == doctest::Approx(1.0 - 16.0 / 30.0));
  std::filesystem::remove_all(dir);
}

TEST_CASE("simulate at tau = 0 uses the Marchenko-Pastur reference") {
  const auto r = call({"simulate", "--N", "50", "--T", "100", "--tau", "0", "--dist", "complex-gaussian"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j["reference"] == "marchenko-pastur");
  CHECK(j["dist"] == "complex-gaussian");
}

TEST_CASE("threads do not change the output") {
  const std::vector<std::string> base = {"simulate", "--N", "30", "--T", "50", "--replicates", "4"};
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(call(base).out == call(threaded).out);
}

TEST_CASE("cmatrix csv") {
  const auto r = call({"cmatrix", "--n", "5", "--tau", "2"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"closed_form", "solver"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(std::stod(rows[i][0]) - std::stod(rows[i][1])) <= 1e-9);
  }
  CHECK(call({"cmatrix", "--n", "5", "--tau", "0"}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"density"}).code == 2);
  CHECK(call({"density", "--c", "-1"}).code == 2);
  CHECK(call({"density", "--c", "1", "--points", "1"}).code == 2);
  CHECK(call({"density", "--c", "1", "--xmin", "2", "--xmax", "1"}).code == 2);
  CHECK(call({"simulate", "--N", "5000", "--T", "10"}).code == 2);
  CHECK(call({"simulate", "--N", "5", "--T", "10", "--dist", "pareto-symmetric", "--alpha", "1.5"}).code == 2);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
  CHECK(call({"density", "--help"}).code == 0);
}

TEST_CASE("verify suites and the psi mutation") {
  CHECK(call({"verify", "--suite", "roots"}).code == 0);
  CHECK(call({"verify", "--suite", "stats"}).code == 0);
  const auto ok = call({"verify", "--suite", "theory"});
  CHECK(ok.code == 0);
  const auto bad = call({"verify", "--suite", "theory", "--inject-psi-fault"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(aclsd::cli::format_double(0.1) == "0.10000000000000001");
  CHECK(aclsd::cli::format_double(-2.0) == "-2");
  CHECK(aclsd::cli::format_double(1e-20) == "9.9999999999999995e-21");
}
