#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "parafermion/cli.hpp"
#include "parafermion/lattice.hpp"

using namespace parafermion;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation lab(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("parafermion-cli-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("global verification run") {
  const fs::path dir = scratch("global");
  const auto r = lab({"verify", "global", "--T", "2", "--L", "1", "--n", "0", "--branch",
                      "dilute", "--x-grid", "0:0.54:0.06", "--out", dir.string()});
  CHECK(r.code == 0);
  const json doc = json::parse(slurp(dir / "verify-global.json"));
  CHECK(doc.at("schema") == kSchemaVersion);
  CHECK(doc.at("config").at("command") == "verify");
  CHECK_FALSE(doc.at("config").contains("workers"));
  CHECK(doc.at("rows").size() == 10);
  for (const auto& row : doc.at("rows")) CHECK(row.at("exactRelative").get<double>() <= 1e-10);
  const std::string csv = slurp(dir / "verify-global.csv");
  CHECK(csv.rfind("n,branch,x,exactResidual,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
}

TEST_CASE("local and massive verification runs") {
  const fs::path dir = scratch("local");
  CHECK(lab({"verify", "local", "--T", "2", "--L", "0", "--n", "-2,-1,0,1,2", "--branch", "both",
             "--out", dir.string()})
            .code == 0);
  CHECK(json::parse(slurp(dir / "verify-local.json")).at("rows").size() == 10);
  CHECK(lab({"verify", "massive", "--T", "2", "--L", "0", "--n", "0", "--x-grid", "0.1:0.3:0.1",
             "--precision", "high", "--digits", "40", "--out", dir.string()})
            .code == 0);
  // An impossible tolerance turns the same checks into failures.
  CHECK(lab({"verify", "local", "--T", "2", "--L", "0", "--tol", "1e-300", "--out", dir.string()})
            .code == 1);
}

TEST_CASE("exponents run") {
  const fs::path dir = scratch("exponents");
  const auto r = lab({"exponents", "--n", "0", "--alpha", "pi", "--out", dir.string()});
  CHECK(r.code == 0);
  const json doc = json::parse(slurp(dir / "exponents.json"));
  const json& e = doc.at("rows").at(0).at("exponents");
  CHECK(e.at("gamma1").at("exact") == "61/64");
  CHECK(e.at("gamma11").at("exact") == "-3/16");
  CHECK(r.out.find("61/64") != std::string::npos);

  const auto wedge = lab({"exponents", "--n", "0,2", "--alpha", "pi/3", "--out", dir.string()});
  CHECK(wedge.code == 0);
  const json w = json::parse(slurp(dir / "exponents.json"));
  CHECK(w.at("rows").at(0).at("exponents").at("alphaOverPi").at("exact") == "1/3");
  CHECK(w.at("rows").at(1).contains("error"));
}

TEST_CASE("usage and capacity errors") {
  CHECK(lab({"enumerate", "--T", "0"}).code == 2);
  CHECK(lab({"enumerate", "--L", "-1"}).code == 2);
  CHECK(lab({}).code == 2);
  CHECK(lab({"frobnicate"}).code == 2);
  CHECK(lab({"verify", "sideways"}).code == 2);
  CHECK(lab({"verify", "local", "--n", "3"}).code == 2);
  CHECK(lab({"verify", "global", "--x-grid", "0.5:0.1:0.1"}).code == 2);
  CHECK(lab({"verify", "local", "--branch", "diluted"}).code == 2);
  CHECK(lab({"asymptotics", "--eta", "0"}).code == 2);
  CHECK(lab({"report"}).code == 2);
  const fs::path dir = scratch("cap");
  CHECK(lab({"enumerate", "--T", "3", "--L", "1", "--cap", "20", "--out", dir.string()}).code == 3);
  CHECK(lab({"--help"}).code == 0);
}

TEST_CASE("outputs do not depend on the worker count") {
  const fs::path one = scratch("w1"), four = scratch("w4");
  for (const auto& [dir, workers] : {std::pair{one, "1"}, {four, "4"}}) {
    CHECK(lab({"enumerate", "--T", "3", "--L", "1", "--workers", workers, "--out", dir.string()})
              .code == 0);
    CHECK(lab({"winding", "--T", "3", "--L", "1", "--n", "0,1", "--workers", workers, "--out",
               dir.string()})
              .code == 0);
  }
  for (const char* f : {"census.json", "winding.json", "winding.csv", "winding-summary.csv"}) {
    CAPTURE(f);
    const std::string a = slurp(one / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(four / f));
  }
}

TEST_CASE("reports") {
  const fs::path dir = scratch("report");
  REQUIRE(lab({"verify", "global", "--T", "2", "--L", "1", "--n", "0", "--x-grid",
               "0:0.54:0.06", "--out", dir.string()})
              .code == 0);
  REQUIRE(lab({"winding", "--T", "3", "--L", "1", "--n", "0", "--out", dir.string()}).code == 0);
  REQUIRE(lab({"asymptotics", "--j", "10,100", "--out", dir.string()}).code == 0);

  const auto r = lab({"report", "--in", (dir / "verify-global.json").string(), "--in",
                      (dir / "winding.json").string(), "--in",
                      (dir / "asymptotics.json").string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("max exact rel.") != std::string::npos);
  CHECK(r.out.find("0.54") != std::string::npos);
  CHECK(r.out.find("vs target -omega") != std::string::npos);
  CHECK(slurp(dir / "report.txt") == r.out);

  // Same inputs, same summary.
  const auto again = lab({"report", "--in", (dir / "verify-global.json").string(), "--in",
                          (dir / "winding.json").string(), "--in",
                          (dir / "asymptotics.json").string(), "--out", dir.string()});
  CHECK(again.out == r.out);

  json doc = json::parse(slurp(dir / "verify-global.json"));
  doc["domain"]["hash"] = std::string(64, '0');
  {
    std::ofstream f(dir / "corrupt.json", std::ios::binary);
    f << doc.dump(2);
  }
  CHECK(lab({"report", "--in", (dir / "corrupt.json").string(), "--out", dir.string()}).code == 2);
  CHECK(lab({"report", "--in", (dir / "missing.json").string(), "--out", dir.string()}).code == 2);
}

TEST_CASE("grid and angle parsing") {
  const auto xs = cli::parse_x_grid("0:0.54:0.06");
  REQUIRE(xs.size() == 10);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == doctest::Approx(0.54));
  CHECK(cli::parse_x_grid("0.2:0.2:0.1").size() == 1);
  CHECK_THROWS_AS(cli::parse_x_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_x_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_x_grid("a:1:0.1"), std::invalid_argument);

  CHECK(*cli::parse_alpha("pi").exact == Rational(1));
  CHECK(*cli::parse_alpha("pi/3").exact == Rational(1, 3));
  CHECK(*cli::parse_alpha("2pi/3").exact == Rational(2, 3));
  CHECK(*cli::parse_alpha("2*pi/3").exact == Rational(2, 3));
  const auto radians = cli::parse_alpha("1.5");
  CHECK_FALSE(radians.exact.has_value());
  CHECK(radians.overPi == doctest::Approx(1.5 / 3.141592653589793));
  CHECK_THROWS_AS(cli::parse_alpha("tau"), std::invalid_argument);
}
