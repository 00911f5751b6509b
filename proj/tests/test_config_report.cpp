#include <cmath>
#include <string>

#include "doctest.h"
#include "frozenspec/config.hpp"
#include "frozenspec/errors.hpp"
#include "frozenspec/report.hpp"
#include "json.hpp"

using namespace frozenspec;
using nlohmann::json;

TEST_SUITE("config_report") {
  TEST_CASE("problem parsing") {
    const ProblemSpec p = parse_problem(R"({
      "points_over_pi": ["1/3", "2/3"], "alpha": 1, "beta": 0,
      "potential": {"sine_modes": [[1, 0.5], [3, -0.2]]},
      "potential2": {"sine_coeffs": [0.5, 0.0, 0.1]},
      "window": {"delta": 0.4}})");
    REQUIRE(p.config.size() == 2);
    CHECK(p.config.points()[0] == doctest::Approx(pi / 3));
    REQUIRE(p.config.rational_points());
    CHECK((*p.config.rational_points())[1] == Fraction::make(2, 3));
    CHECK(p.config.alpha() == 1);
    CHECK(p.potential.sine_coeffs() == std::vector<double>{0.5, 0.0, -0.2});
    REQUIRE(p.potential2);
    CHECK(p.potential2->sine_coeffs().size() == 3);
    REQUIRE(p.window);
    CHECK(p.window->delta == 0.4);

    const ProblemSpec q = parse_problem(R"({"points": [1.0, 2.0], "points_over_pi": ["1/2"]})");
    CHECK(q.config.size() == 1);
    CHECK(q.potential.is_zero());

    const ProblemSpec r = parse_problem(R"({"points": [1.0]})");
    CHECK_FALSE(r.config.rational_points());
  }

  TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(parse_problem("{"), ConfigError);
    CHECK_THROWS_AS(parse_problem("[]"), ConfigError);
    CHECK_THROWS_AS(parse_problem("{}"), ConfigError);
    CHECK_THROWS_AS(parse_problem(R"({"points_over_pi": ["x/3"]})"), ConfigError);
    CHECK_THROWS_AS(parse_problem(R"({"points": [1.0], "alpha": 2})"), ConfigError);
    CHECK_THROWS_AS(parse_problem(R"({"points": [2.0, 1.0]})"), ConfigError);
    CHECK_THROWS_AS(parse_problem(R"({"points": [1.0], "potential": {"sine_modes": [[0, 1]]}})"), ConfigError);
    CHECK_THROWS_AS(parse_problem(R"({"points": [1.0], "potential": {"constant": 1, "sine_coeffs": [1]}})"),
                    ConfigError);
    CHECK_THROWS_AS(load_problem("/nonexistent/frozenspec.json"), IoError);
    CHECK_THROWS_AS(parse_points_over_pi("1/3,,2/3"), ConfigError);
    CHECK(parse_points_over_pi("0.9999").points()[0] == doctest::Approx(0.9999 * pi));
  }

  TEST_CASE("grid parsing") {
    const GridSpec g = parse_grid("0.1:10:0.01");
    CHECK(g.values().size() == 991);
    CHECK(g.values().back() == doctest::Approx(10.0));
    CHECK(parse_grid("1:1:0.5").values().size() == 1);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), ParameterError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ParameterError);
    CHECK_THROWS_AS(parse_grid("0:1"), ParameterError);
    CHECK_THROWS_AS(parse_grid("a:b:c"), ParameterError);
  }

  TEST_CASE("list and region parsing") {
    const auto z = parse_complex_list("2,1+0.5i,-3i,i");
    REQUIRE(z.size() == 4);
    CHECK(z[0] == cplx(2.0, 0.0));
    CHECK(z[1] == cplx(1.0, 0.5));
    CHECK(z[2] == cplx(0.0, -3.0));
    CHECK(z[3] == cplx(0.0, 1.0));
    CHECK_THROWS_AS(parse_complex_list("1+"), ParameterError);
    CHECK(parse_real_list("10.3,20.3").size() == 2);
    CHECK_THROWS_AS(parse_real_list("1,,2"), ParameterError);

    CHECK(parse_region("disk:5.5").radius() == 5.5);
    CHECK(parse_region("disk:2@1,-1").center() == cplx(1.0, -1.0));
    CHECK(parse_region("annulus:1,2").kind() == Region::Kind::annulus);
    CHECK(parse_region("rect:0,0,1,2").upper_right() == cplx(1.0, 2.0));
    CHECK_THROWS(parse_region("square:1"));
    CHECK_THROWS(parse_region("disk:-1"));
  }

  TEST_CASE("charfun report brackets the Dirichlet zeros") {
    const ProblemSpec p = parse_problem(R"({"points_over_pi": ["1/3"], "alpha": 0, "beta": 0})");
    const Report r = charfun_report(p, parse_grid("0.1:10:0.01"));
    const json j = json::parse(r.json);
    CHECK(j["kind"] == "charfun");
    CHECK(j["sign_changes"] == 9);
    long lines = 0;
    for (char c : r.csv) lines += c == '\n';
    CHECK(lines == 991 + 2);
    CHECK(r.csv.rfind("# N=1 alpha=0 beta=0\n", 0) == 0);
    CHECK(r.svg.find("<svg") != std::string::npos);
    CHECK(r.text.rfind("record: charfun\n", 0) == 0);
  }

  TEST_CASE("spectrum report is deterministic") {
    const ProblemSpec p = parse_problem(R"({"points_over_pi": ["1/3"], "potential": {"sine_coeffs": [0.5]}})");
    const Report a = spectrum_report(p, 5.5, 7), b = spectrum_report(p, 5.5, 7);
    CHECK(a.json == b.json);
    CHECK(a.csv == b.csv);
    CHECK(a.outcome == Outcome::ok);
    const json j = json::parse(a.json);
    CHECK(j["eigenvalues"].size() == 5);
    CHECK(j["seed"] == 7);
    CHECK_THROWS_AS(spectrum_report(p, 0.0), ParameterError);
  }

  TEST_CASE("lattice report") {
    const Report r = lattice_report(parse_points_over_pi("1/3"), 600, std::nullopt, 50);
    const json j = json::parse(r.json);
    CHECK(j["method"] == lattice_method_name(LatticeMethod::exact_period_scan));
    CHECK(j["exact_fraction"] == "1/3");
    CHECK(j["period"] == 6);
    const Report n = lattice_report(parse_points_over_pi("0.9999"), 600, std::nullopt, 50);
    CHECK(json::parse(n.json)["vanishing_fraction"] == 0.0);
  }

  TEST_CASE("zeros, density and identity reports") {
    const Report z = zeros_report("builtin:cos_pi", nullptr, parse_region("disk:3"), 1e-8);
    CHECK(z.csv.rfind("re,im,multiplicity,residual,converged\n", 0) == 0);
    CHECK_THROWS_AS(zeros_report("charfun", nullptr, parse_region("disk:3"), 1e-8), ParameterError);
    CHECK_THROWS_AS(zeros_report("builtin:nope", nullptr, parse_region("disk:3"), 1e-8), ParameterError);

    const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3};
    const json d = json::parse(density_report("builtin:cos_pi", nullptr, radii, false).json);
    CHECK(d["kind"] == "density");
    CHECK(std::abs(d["full_disk_slope"].get<double>() - 2.0) < 0.05);
    const std::vector<double> few = {10.3, 20.3};
    CHECK_THROWS_AS(density_report("builtin:cos_pi", nullptr, few, false), ParameterError);

    const ProblemSpec only1 = parse_problem(R"({"points": [1.0], "alpha": 1, "potential": {"sine_coeffs": [1]}})");
    const std::vector<cplx> rhos = {{1.0, 0.5}};
    CHECK_THROWS_AS(identity_report(only1, rhos), ConfigError);
    const ProblemSpec both = parse_problem(
        R"({"points": [1.0], "alpha": 1, "potential": {"sine_coeffs": [1]}, "potential2": {"sine_coeffs": [0, 1]}})");
    const json id = json::parse(identity_report(both, rhos).json);
    CHECK(id["max_relative_check"].get<double>() < 1e-10);
  }
}
