#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "frozenspec/charfun.hpp"
#include "frozenspec/density_lab.hpp"
#include "frozenspec/errors.hpp"
#include "frozenspec/zeros.hpp"

using namespace frozenspec;

namespace {

cplx cos_pi(cplx z) { return std::cos(pi * z); }

// Enumeration oracle: zeros of cos(pi z) with |z| <= r are the half-integers.
long enumerate_cos(double r) {
  long n = 0;
  for (long k = -1000; k <= 1000; ++k) n += std::abs(k + 0.5) <= r;
  return n;
}

}  // namespace

TEST_SUITE("zeros") {
  TEST_CASE("winding counts") {
    CHECK(winding_count(cos_pi, Region::disk(0.0, 10.2)).count == 20);
    CHECK(enumerate_cos(10.2) == 20);
    const auto sinc = [](cplx z) { return std::abs(z) < 1e-12 ? cplx(pi) : std::sin(pi * z) / z; };
    CHECK(winding_count(sinc, Region::disk(0.0, 5.5)).count == 10);
    CHECK(winding_count(cos_pi, Region::annulus(0.0, 1.2, 3.2)).count == 4);
    CHECK(winding_count(cos_pi, Region::rectangle({0.0, -1.0}, {3.0, 1.0})).count == 3);
  }

  TEST_CASE("a contour through a zero is reported") {
    CHECK_THROWS_AS(winding_count(cos_pi, Region::disk(0.0, 0.5)), ContourThroughZeroError);
  }

  TEST_CASE("locate cos(pi rho) on [0,3]x[-1,1]") {
    const ZeroList z = locate_zeros(cos_pi, Region::rectangle({0.0, -1.0}, {3.0, 1.0}), 1e-10);
    REQUIRE(z.zeros.size() == 3);
    std::vector<double> re;
    for (const auto& e : z.zeros) {
      CHECK(e.multiplicity == 1);
      CHECK(std::abs(e.location.imag()) <= 1e-10);
      re.push_back(e.location.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(std::abs(re[0] - 0.5) <= 1e-10);
    CHECK(std::abs(re[1] - 1.5) <= 1e-10);
    CHECK(std::abs(re[2] - 2.5) <= 1e-10);
    CHECK(z.complete());
  }

  TEST_CASE("Delta for q = 0, (0,0), disk 4.5") {
    const CharFun cf(FrozenConfig::make({1.0}, 0, 0), Potential());
    const ZeroList z = locate_zeros([&](cplx r) { return cf(r); }, Region::disk(0.0, 4.5), 1e-10);
    REQUIRE(z.zeros.size() == 8);
    std::vector<double> re;
    for (const auto& e : z.zeros) re.push_back(e.location.real());
    std::sort(re.begin(), re.end());
    const std::vector<double> expected = {-4, -3, -2, -1, 1, 2, 3, 4};
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(re[k] - expected[k]) <= 1e-9);
  }

  TEST_CASE("double zero") {
    const auto f = [](cplx z) { return (z - 1.0) * (z - 1.0) * (z + cplx(0.0, 2.0)); };
    const ZeroList z = locate_zeros(f, Region::disk(0.0, 3.0), 1e-9);
    REQUIRE(z.zeros.size() == 2);
    CHECK(z.total_multiplicity() == 3);
    const auto& dbl = std::abs(z.zeros[0].location - 1.0) < 1e-6 ? z.zeros[0] : z.zeros[1];
    CHECK(dbl.multiplicity == 2);
    CHECK(std::abs(dbl.location - 1.0) <= 1e-8);
  }

  TEST_CASE("counting is additive under products and matches localisation") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cplx> rf, rg;
      for (int k = 0; k < 3; ++k) rf.emplace_back(u(rng), u(rng));
      for (int k = 0; k < 4; ++k) rg.emplace_back(u(rng), u(rng));
      auto poly = [](const std::vector<cplx>& roots) {
        return [roots](cplx z) {
          cplx p = 1.0;
          for (cplx r : roots) p *= z - r;
          return p;
        };
      };
      const ComplexFunction f = poly(rf), g = poly(rg);
      const Region disk = Region::disk(0.0, 2.05);
      bool near = false;
      for (cplx r : rf) near = near || std::abs(std::abs(r) - 2.05) < 0.05;
      for (cplx r : rg) near = near || std::abs(std::abs(r) - 2.05) < 0.05;
      if (near) continue;
      const long cf = winding_count(f, disk).count, cg = winding_count(g, disk).count;
      const long cfg = winding_count([&](cplx z) { return f(z) * g(z); }, disk).count;
      CHECK(cfg == cf + cg);
      const ZeroList z = locate_zeros(f, disk, 1e-8);
      CHECK(z.total_multiplicity() == cf);
    }
  }

  TEST_CASE("density estimates") {
    const std::vector<double> radii = {10.2, 20.2, 40.2, 80.2};
    const DensityReport d = density_estimate(cos_pi, radii);
    CHECK(std::abs(d.fitted_slope - 2.0) <= 0.04);
    for (std::size_t k = 0; k < radii.size(); ++k) CHECK(d.counts[k] == enumerate_cos(radii[k]));
    const DensityReport half = density_estimate(cos_pi, radii, true);
    CHECK(std::abs(half.fitted_slope - 1.0) <= 0.02);

    const auto exp_ind = builtin_function("exp_indicator");
    REQUIRE(exp_ind);
    const std::vector<double> radii2 = {10.5, 20.5, 40.5, 80.5};
    const DensityReport e = density_estimate(*exp_ind, radii2);
    CHECK(std::abs(e.fitted_slope - 1.0) <= 0.03);
  }

  TEST_CASE("line fit and Titchmarsh prediction") {
    const std::vector<double> x = {1, 2, 3, 4}, y = {3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.stderr_slope == doctest::Approx(0.0));
    CHECK(titchmarsh_predict(pi) == doctest::Approx(1.0));
    CHECK(titchmarsh_predict(pi / 2) == doctest::Approx(0.5));
    CHECK(titchmarsh_predict(0.0) == 0.0);
    CHECK_THROWS_AS(titchmarsh_predict(-1.0), ParameterError);
  }

  TEST_CASE("Newton polishing") {
    const auto f = [](cplx z) { return z * z - 2.0; };
    const NewtonResult r = newton_polish(f, 1.3);
    CHECK(r.converged);
    CHECK(std::abs(r.z - std::sqrt(2.0)) <= 1e-12);
  }
}
