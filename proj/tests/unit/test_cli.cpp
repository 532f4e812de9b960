#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using qvirial::cli::run;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream o, e;
  Run r;
  r.code = run(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

// data rows of a CSV, split into cells; comment lines and the header are skipped
std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

std::string header(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

}  // namespace

TEST_CASE("i2-sweep") {
  SECTION("x sweep crosses zero at x = 1") {
    const Run r = call({"i2-sweep", "--start", "0.2", "--stop", "3", "--steps", "29", "--rho", "0.5"});
    REQUIRE(r.code == 0);
    CHECK(header(r.out) == "x,rho,beta_I2,verdict");
    CHECK(r.out.find("# qvirial ") == 0);
    const auto rs = rows(r.out);
    REQUIRE(rs.size() == 29);
    for (const auto& row : rs) {
      const double x = std::stod(row[0]), v = std::stod(row[2]);
      if (x < 0.999) CHECK(v < 0.0);
      if (x > 1.001) CHECK(v > 0.0);
    }
  }
  SECTION("rho sweep at x = 0.95 is negative and decreasing") {
    const Run r = call({"i2-sweep", "--variable", "rho", "--start", "0.1", "--stop", "1.3", "--steps", "13", "--x",
                        "0.95"});
    REQUIRE(r.code == 0);
    double prev = 1.0;
    for (const auto& row : rows(r.out)) {
      const double v = std::stod(row[2]);
      CHECK(v < 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
  SECTION("two-point sweep") {
    const Run r = call({"i2-sweep", "--steps", "2"});
    REQUIRE(r.code == 0);
    CHECK(rows(r.out).size() == 2);
  }
  SECTION("invalid grids exit 2") {
    CHECK(call({"i2-sweep", "--steps", "1"}).code == 2);
    CHECK(call({"i2-sweep", "--start", "3", "--stop", "1"}).code == 2);
    CHECK(call({"i2-sweep", "--variable", "sigma"}).code == 2);
    CHECK(call({"i2-sweep", "--no-such-flag"}).code == 2);
    CHECK(call({}).code == 2);
  }
  SECTION("output is deterministic across thread counts") {
    const Run a = call({"i2-sweep", "--threads", "1"});
    const Run b = call({"i2-sweep", "--threads", "3"});
    CHECK(a.out == b.out);
  }
}

TEST_CASE("i1-drude-sweep") {
  const Run r = call({"i1-drude-sweep", "--rho", "2.1", "--sigma", "10", "--start", "0.5", "--stop", "3", "--steps", "11"});
  REQUIRE(r.code == 0);
  CHECK(header(r.out) == "x,rho,sigma,beta_I1,verdict");
  double prev = -1e300;
  for (const auto& row : rows(r.out)) {
    const double v = std::stod(row[3]);
    CHECK(v > prev);
    prev = v;
  }
  SECTION("residue form") {
    const Run p = call({"i1-drude-sweep", "--form", "poles", "--steps", "2"});
    REQUIRE(p.code == 0);
    for (const auto& row : rows(p.out)) CHECK(std::stod(row[3]) < 0.0);
    CHECK(call({"i1-drude-sweep", "--form", "other"}).code == 2);
  }
  SECTION("grid-point failures become rows") {
    const Run c = call({"i1-drude-sweep", "--variable", "rho", "--start", "1.5", "--stop", "2.5", "--steps", "3"});
    REQUIRE(c.code == 0);
    const auto rs = rows(c.out);
    REQUIRE(rs.size() == 3);
    CHECK(rs[1][4] == "error:CriticalDampingSingularity");
    CHECK(std::isnan(std::stod(rs[1][3])));
  }
}

TEST_CASE("oracle-compare") {
  SECTION("i2 duel passes") {
    const Run r = call({"oracle-compare", "--which", "i2", "--x", "2", "--rho", "0.75"});
    CHECK(r.code == 0);
    CHECK(rows(r.out).at(0)[5] == "pass");
  }
  SECTION("classical EC is kT/2") {
    const Run r = call({"oracle-compare", "--which", "EC", "--classical"});
    CHECK(r.code == 0);
    const auto rs = rows(r.out);
    REQUIRE(rs.size() == 2);
    CHECK(std::abs(std::stod(rs[1][1]) - 0.25) < 1e-6 * 0.25);  // x = 2: kT = 0.5
  }
  SECTION("V at weak coupling") {
    CHECK(call({"oracle-compare", "--which", "V", "--rho", "0.01"}).code == 0);
  }
  SECTION("published Drude series disagrees with the quadrature") {
    const Run r = call({"oracle-compare", "--which", "i1_drude", "--x", "1", "--rho", "2.1", "--sigma", "10"});
    CHECK(r.code == 3);
    const auto rs = rows(r.out);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0][5] == "fail");
    CHECK(rs[1][5] == "diagnostic");
  }
  SECTION("Ohmic I1 slope row") {
    const Run r = call({"oracle-compare", "--which", "i1_ohmic", "--rho", "2.5", "--n-terms", "1000"});
    const auto rs = rows(r.out);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0][0] == "log-divergent: slope_series vs slope_oracle");
  }
  SECTION("unknown quantity") {
    CHECK(call({"oracle-compare", "--which", "nope"}).code == 2);
    CHECK(call({"oracle-compare"}).code == 2);
  }
}

TEST_CASE("circuit") {
  const Run r = call({"circuit", "--hbar", "0"});
  REQUIRE(r.code == 0);
  const auto rs = rows(r.out);
  CHECK(std::abs(std::stod(rs[0][1]) - 0.5) < 1e-6);
  CHECK(std::abs(std::stod(rs[1][1]) - 0.5) < 1e-6);
  const Run q = call({"circuit"});
  REQUIRE(q.code == 0);
  CHECK(rows(q.out).size() == 5);
  CHECK(call({"circuit", "--R", "0"}).code == 2);
}

TEST_CASE("i1-ohmic-diag") {
  const Run r = call({"i1-ohmic-diag", "--n-terms", "200"});
  REQUIRE(r.code == 0);
  CHECK(rows(r.out).size() == 200);
  CHECK(r.out.find("slope_oracle=") != std::string::npos);
  CHECK(call({"i1-ohmic-diag", "--rho", "0.5"}).code == 2);
}

TEST_CASE("langevin") {
  SECTION("default run passes its check") {
    const Run r = call({"langevin", "--check"});
    CHECK(r.code == 0);
    CHECK(rows(r.out).size() == 5);
  }
  SECTION("doubling Gamma doubles <x^2>") {
    const Run r = call({"langevin", "--Gamma", "2"});
    REQUIRE(r.code == 0);
    const auto pot = rows(r.out).at(1);
    const double mean = std::stod(pot[1]), se = std::stod(pot[2]);
    CHECK(std::abs(mean - 1.0) <= 3.0 * se);
  }
  SECTION("unstable step exits 2 before integrating") {
    const auto path = std::filesystem::temp_directory_path() / "qvirial_cli_unstable.csv";
    std::filesystem::remove(path);
    const Run r = call({"langevin", "--dt", "0.5", "--trajectory", path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("UnstableStep") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(path));
  }
}

TEST_CASE("config file and output file") {
  const auto dir = std::filesystem::path(QVIRIAL_TEST_DATA_DIR);
  const auto cfg = dir / "cli_test.toml";
  const auto out = dir / "cli_test.csv";
  {
    std::ofstream f(cfg);
    f << "[sweep]\nvariable = \"rho\"\nstart = 0.25\nstop = 1.25\nsteps = 5\nx = 1.05\n";
  }
  SECTION("config values are used") {
    const Run r = call({"i2-sweep", "--config", cfg.string()});
    REQUIRE(r.code == 0);
    const auto rs = rows(r.out);
    REQUIRE(rs.size() == 5);
    CHECK(std::stod(rs[0][1]) == 0.25);
    CHECK(std::stod(rs[0][0]) == 1.05);
  }
  SECTION("flags win over the config") {
    const Run r = call({"i2-sweep", "--config", cfg.string(), "--steps", "3"});
    REQUIRE(r.code == 0);
    CHECK(rows(r.out).size() == 3);
  }
  SECTION("--out writes the file") {
    std::filesystem::remove(out);
    const Run r = call({"i2-sweep", "--config", cfg.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(rows(ss.str()).size() == 5);
  }
  SECTION("bad config exits 2") {
    const auto bad = dir / "cli_bad.toml";
    std::ofstream(bad) << "[sweep]\nbogus = 1\n";
    CHECK(call({"i2-sweep", "--config", bad.string()}).code == 2);
  }
}

TEST_CASE("version") {
  const Run r = call({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(qvirial::cli::version()) != std::string::npos);
}
