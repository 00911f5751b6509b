#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kRoot = FROZENSPEC_TEST_DIR;

fs::path dir(const std::string& name) {
  const fs::path d = kRoot / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run(const fs::path& out, const std::string& args) {
  const std::string cmd = std::string("\"") + FROZENSPEC_CLI + "\" --out \"" + out.string() + "\" " + args + " > \"" +
                          (out / "stdout.txt").string() + "\" 2> \"" + (out / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kRoot);
  const fs::path p = kRoot / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("charfun writes table, plot and manifest") {
  const fs::path out = dir("charfun");
  REQUIRE(run(out, "--points 1/3 charfun --grid 0.1:10:0.01") == 0);
  const std::string csv = slurp(out / "charfun.csv");
  long lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 991 + 2);
  CHECK(fs::exists(out / "charfun.svg"));
  const json m = json::parse(slurp(out / "manifest.json"));
  CHECK(m["subcommand"] == "charfun");
  CHECK(m["seed"] == 20240611);
  CHECK(m["output_paths"].size() == 2);
  CHECK(slurp(out / "stdout.txt").find("sign_changes: 9") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  const fs::path out = dir("usage");
  CHECK(run(out, "--points 1/3 charfun --grid 1:0:0.1") == 2);
  CHECK_FALSE(fs::exists(out / "charfun.csv"));
  CHECK(run(out, "--points 1/3 spectrum --radius 0") == 2);
  CHECK(run(out, "--points 1/3 spectrum --radius -2") == 2);
  CHECK(run(out, "density --radii 10,,20") == 2);
  CHECK(run(out, "density --radii 10,abc") == 2);
  CHECK(run(out, "--format xml spectrum") == 2);
  CHECK(run(out, "spectrum") == 2);
  CHECK(run(out, "--config /nonexistent/p.json spectrum") == 1);
  CHECK(run(out, "--points 1/3 no-such-command") == 2);
}

TEST_CASE("spectrum output is byte-identical across runs") {
  const fs::path a = dir("spectrum_a"), b = dir("spectrum_b");
  const std::string args = "--format json --points 1/3 --alpha 1 spectrum --radius 5.5";
  REQUIRE(run(a, args) == 0);
  REQUIRE(run(b, args) == 0);
  CHECK(slurp(a / "spectrum.json") == slurp(b / "spectrum.json"));
  CHECK(json::parse(slurp(a / "spectrum.json"))["complete"] == true);
}

TEST_CASE("isospectral search exit codes") {
  const fs::path good = write_config("iso_third.json",
                                     R"({"points_over_pi": ["1/3"], "alpha": 1, "beta": 0,
                                         "potential": {"sine_coeffs": [0.5]}})");
  const fs::path bad = write_config("iso_one.json",
                                    R"({"points": [1.0], "alpha": 1, "beta": 0,
                                        "potential": {"sine_coeffs": [0.5]}})");
  const fs::path out = dir("iso_good");
  REQUIRE(run(out, "--config \"" + good.string() + "\" isospectral") == 0);
  const auto rows = csv_rows(slurp(out / "isospectral.csv"));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0][2] == "objective");
  for (std::size_t k = 2; k < rows.size(); ++k)
    if (rows[k][0] == rows[k - 1][0]) CHECK(std::stod(rows[k][2]) <= std::stod(rows[k - 1][2]));

  const fs::path out2 = dir("iso_bad");
  CHECK(run(out2, "--config \"" + bad.string() + "\" isospectral --restarts 2") == 3);
  CHECK(fs::exists(out2 / "isospectral.csv"));
}

TEST_CASE("lattice density") {
  const fs::path out = dir("lattice");
  REQUIRE(run(out, "--format json --points 1/3 lattice-density --n-max 600") == 0);
  const json j = json::parse(slurp(out / "lattice-density.json"));
  CHECK(j["exact_fraction"] == "1/3");
  REQUIRE(run(out, "--format json --points 0.9999 lattice-density --n-max 600") == 0);
  CHECK(json::parse(slurp(out / "lattice-density.json"))["vanishing_fraction"] == 0.0);
  CHECK(run(out, "--points 0.9999 lattice-density --method exact") == 2);
}

TEST_CASE("density of cos(pi rho)") {
  const fs::path out = dir("density");
  REQUIRE(run(out, "--format json density --function builtin:cos_pi --radii 10.3,20.3,40.3,80.3") == 0);
  const json j = json::parse(slurp(out / "density.json"));
  CHECK(std::abs(j["full_disk_slope"].get<double>() - 2.0) < 0.05);
}

TEST_CASE("verify") {
  const fs::path out = dir("verify");
  CHECK(run(out, "verify --only 8") == 0);
  CHECK(slurp(out / "stdout.txt").find("PASS") != std::string::npos);
  CHECK(run(out, "verify --only 1 --tolerance-scale 1e-30") != 0);
}
