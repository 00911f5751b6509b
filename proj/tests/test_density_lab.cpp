#include <cmath>
#include <numeric>

#include "doctest.h"
#include "frozenspec/density_lab.hpp"
#include "frozenspec/errors.hpp"

using namespace frozenspec;

namespace {

// Exhaustive rational oracle: cos((2n+1) p pi / (2q)) = 0 iff (2n+1) p / q is an odd integer.
double single_point_fraction(long p, long q, long period) {
  long zeros = 0;
  for (long n = 0; n < period; ++n) {
    const long num = (2 * n + 1) * p;
    zeros += num % q == 0 && (num / q) % 2 != 0;
  }
  return static_cast<double>(zeros) / static_cast<double>(period);
}

}  // namespace

TEST_SUITE("density_lab") {
  TEST_CASE("a = pi/3 vanishes on 1/3 of the lattice with period 6") {
    for (long n_max : {6L, 60L, 600L}) {
      const auto r = lattice_vanishing_density(FrozenConfig::from_fractions({Fraction::make(1, 3)}, 0, 0), n_max);
      CHECK(r.method == LatticeMethod::exact_period_scan);
      REQUIRE(r.exact_fraction);
      CHECK(*r.exact_fraction == Fraction::make(1, 3));
      REQUIRE(r.period);
      CHECK(*r.period == 6);
    }
    CHECK(single_point_fraction(1, 3, 6) == doctest::Approx(1.0 / 3.0));
    const auto r = lattice_vanishing_density(FrozenConfig::from_fractions({Fraction::make(1, 3)}, 0, 0), 11);
    for (const auto& s : r.samples) CHECK(s.is_zero == (s.n % 3 == 1));
  }

  TEST_CASE("vanishing-free configurations") {
    const auto half = lattice_vanishing_density(FrozenConfig::from_fractions({Fraction::make(1, 2)}, 0, 0), 600);
    CHECK(*half.exact_fraction == Fraction::make(0, 1));
    const auto pair = lattice_vanishing_density(
        FrozenConfig::from_fractions({Fraction::make(1, 3), Fraction::make(2, 3)}, 0, 0), 600);
    CHECK(*pair.exact_fraction == Fraction::make(0, 1));
    const auto irr = lattice_vanishing_density(FrozenConfig::make({0.9999 * pi}, 0, 0), 600);
    CHECK(irr.method == LatticeMethod::numeric_scan);
    CHECK(irr.vanishing_fraction == 0.0);
    CHECK_FALSE(irr.period);
  }

  TEST_CASE("exact fraction is stable at n_max = 10 P") {
    for (auto [p, q] : {std::pair{1L, 5L}, {3L, 7L}, {2L, 9L}}) {
      const auto cfg = FrozenConfig::from_fractions({Fraction::make(p, q)}, 0, 0);
      const auto a = lattice_vanishing_density(cfg, 50);
      REQUIRE(a.period);
      const auto b = lattice_vanishing_density(cfg, 10 * *a.period);
      CHECK(*a.exact_fraction == *b.exact_fraction);
      CHECK(a.vanishing_fraction == doctest::Approx(single_point_fraction(p, q, *a.period)));
      CHECK((*a.period % a.exact_fraction->den) == 0);
    }
  }

  TEST_CASE("exact mode needs rational points") {
    CHECK_THROWS_AS(lattice_vanishing_density(FrozenConfig::make({1.0}, 0, 0), 10, LatticeMethod::exact_period_scan),
                    ModeError);
  }

  TEST_CASE("sum and product rules on cos(rho pi), cos(rho pi / 2)") {
    const std::vector<double> radii = {10.2, 20.2, 40.2, 80.2};
    const auto f = *builtin_function("cos_pi");
    const auto g = *builtin_function("cos_half_pi");
    const SumRuleReport r = density_sum_rule_check(f, g, radii);
    CHECK(r.product_relative <= 0.05);
    CHECK(r.sum_checked);
    CHECK(r.sum_relative <= 0.05);
    const SumRuleReport same = density_sum_rule_check(f, f, radii);
    CHECK_FALSE(same.sum_checked);
    CHECK_FALSE(same.skip_reason.empty());
  }

  TEST_CASE("transform densities of sin x") {
    const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3};
    const TransformDensityReport r = transform_density_check(Potential::from_sine({1.0}), radii);
    CHECK(std::abs(r.cosine.fitted_slope - 2.0) <= 0.1);
    CHECK(std::abs(r.sine.fitted_slope - 2.0) <= 0.1);
    // One-sided exponential transform: zeros only on one lattice side.
    CHECK(std::abs(r.exponential.fitted_slope - 1.0) <= 0.1);
  }

  TEST_CASE("cosine sum") {
    const std::vector<double> a = {1.0, 2.0};
    CHECK(std::abs(cosine_sum(a, {0.3, 0.1}) - (std::cos(cplx(0.3, 0.1)) + std::cos(cplx(0.6, 0.2)))) <= 1e-15);
  }

  TEST_CASE("builtins") {
    CHECK(builtin_function("cos_pi"));
    CHECK(builtin_function("sinc_pi"));
    CHECK_FALSE(builtin_function("nope"));
    const auto sinc = *builtin_function("sinc_pi");
    const DensityReport d = density_estimate(sinc, std::vector<double>{10.2, 20.2, 40.2, 80.2});
    CHECK(std::abs(d.fitted_slope - 2.0) <= 0.06);
  }
}
