#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "frozenspec/errors.hpp"
#include "frozenspec/inverse_lab.hpp"

using namespace frozenspec;

namespace {

// (1,0) form of the identity with direct kernel integrals:
//   rho [ sum cos(rho a_i) * w_pi - cos(rho pi) * sum w_i ].
cplx identity_10_direct(const Potential& qhat, const std::vector<double>& a, cplx rho) {
  cplx csum = 0.0, wsum = 0.0;
  for (double x : a) {
    csum += std::cos(rho * x);
    wsum += kernel_integral(qhat, x, rho, KernelKind::sine);
  }
  return rho * (csum * kernel_integral(qhat, pi, rho, KernelKind::sine) - std::cos(rho * pi) * wsum);
}

}  // namespace

TEST_SUITE("inverse_lab") {
  TEST_CASE("identity residual matches the direct (1,0) expression at moderate rho") {
    const std::vector<double> a = {0.7, 1.9};
    const auto cfg = FrozenConfig::make(a, 1, 0);
    const Potential qhat = Potential::from_sine({0.4, -1.0, 0.3});
    for (cplx rho : {cplx(0.6, 0.0), cplx(2.0, 0.5), cplx(6.5, -1.0)}) {
      const cplx direct = identity_10_direct(qhat, a, rho);
      CHECK(std::abs(identity_residual(qhat, cfg, rho) - direct) <= 1e-11 * (1.0 + std::abs(direct)));
    }
  }

  TEST_CASE("difference check vanishes") {
    const auto cfg = FrozenConfig::make({0.5, 1.5, 2.5}, 1, 0);
    const Potential q1 = Potential::from_sine({1.0, 0.2, -0.6});
    const Potential q2 = Potential::from_sine({-0.3, 0.9});
    const CharFun d1(cfg, q1);
    for (cplx rho : {cplx(1.0, 0.3), cplx(9.0, -4.0), cplx(17.0, 12.0)})
      CHECK(std::abs(identity_residual_difference_check(q1, q2, cfg, rho)) <= 1e-10 * (1.0 + std::abs(rho * d1(rho))));
  }

  TEST_CASE("q^ = 0 and rho = 0") {
    const auto cfg = FrozenConfig::make({1.0}, 1, 0);
    CHECK(identity_residual(Potential(), cfg, {3.0, 1.0}) == cplx(0.0));
    CHECK(identity_residual(Potential::from_sine({1.0}), cfg, 0.0) == cplx(0.0));
  }

  TEST_CASE("difference identity is unchanged by a common translation") {
    const auto cfg = FrozenConfig::make({0.8, 2.0}, 1, 0);
    const Potential q1 = Potential::from_sine({0.5, 0.5});
    const Potential q2 = Potential::from_sine({-0.5, 0.0, 1.0});
    const Potential r = Potential::from_sine({2.0, -1.0, 0.0, 0.7});
    const Potential t1 = linear_combination(1.0, q1, 1.0, r), t2 = linear_combination(1.0, q2, 1.0, r);
    for (cplx rho : {cplx(1.5, 0.2), cplx(7.0, -2.0)}) {
      const cplx base = identity_residual(linear_combination(1.0, q1, -1.0, q2), cfg, rho);
      const cplx shifted = identity_residual(linear_combination(1.0, t1, -1.0, t2), cfg, rho);
      CHECK(std::abs(base - shifted) <= 1e-10 * (1.0 + std::abs(base)));
      CHECK(std::abs(identity_residual_difference_check(t1, t2, cfg, rho)) <= 1e-10 * (1.0 + std::abs(rho) * 100));
    }
  }

  TEST_CASE("identity residual is odd in rho") {
    const auto cfg = FrozenConfig::make({1.1, 2.4}, 1, 0);
    const Potential qhat = Potential::from_sine({0.3, 0.8, -0.2});
    for (cplx rho : {cplx(1.7, 0.4), cplx(11.0, -3.0)}) {
      const cplx p = identity_residual(qhat, cfg, rho), m = identity_residual(qhat, cfg, -rho);
      CHECK(std::abs(p + m) <= 1e-10 * (1.0 + std::abs(p)));
      CHECK(std::abs(p / rho - m / (-rho)) <= 1e-10 * (1.0 + std::abs(p / rho)));
    }
  }

  TEST_CASE("unperturbed spectra") {
    const auto cfg00 = FrozenConfig::from_fractions({Fraction::make(1, 3)}, 0, 0);
    const Spectrum s = compute_spectrum(Potential(), cfg00, Region::disk(0.0, 5.5));
    REQUIRE(s.eigenvalues.size() == 5);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(s.eigenvalues[n - 1].lambda - double(n * n)) <= 1e-8);
    CHECK(s.complete());
    CHECK(s.located_multiplicity == s.rho_zero_count);

    const Spectrum h = compute_spectrum(Potential(), cfg00.with_boundary(0, 1), Region::disk(0.0, 5.5));
    REQUIRE(h.eigenvalues.size() == 5);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(h.eigenvalues[n].lambda - (n + 0.5) * (n + 0.5)) <= 1e-8);
  }

  TEST_CASE("small perturbation moves eigenvalues continuously") {
    const auto cfg = FrozenConfig::make({1.0}, 0, 0);
    const Spectrum s = compute_spectrum(Potential::from_sine({1e-6}), cfg, Region::disk(0.0, 5.5));
    REQUIRE(s.eigenvalues.size() == 5);
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(s.eigenvalues[n - 1].lambda - double(n * n)) <= 1e-4);
  }

  TEST_CASE("spectrum totals equal the winding count") {
    const auto cfg = FrozenConfig::make({0.9, 2.0}, 1, 0);
    const Potential q = Potential::from_sine({1.5, -0.7, 0.3});
    const Spectrum s = compute_spectrum(q, cfg, Region::disk(0.0, 7.3));
    long total = 0;
    for (const auto& e : s.eigenvalues) total += e.multiplicity;
    CHECK(s.located_multiplicity == s.rho_zero_count);
    CHECK(total * 2 >= s.rho_zero_count - 1);
  }

  TEST_CASE("config hash") {
    const auto cfg = FrozenConfig::make({1.0}, 0, 0);
    const std::string h = config_hash(Potential(), cfg);
    CHECK(h.size() == 16);
    CHECK(h == config_hash(Potential(), cfg));
    CHECK(h != config_hash(Potential::from_sine({1.0}), cfg));
  }

  TEST_CASE("trivial fixed point") {
    IsospectralOptions o;
    o.norm_floor = 0.0;
    o.init = InitKind::zero;
    o.verify = false;
    const IsospectralResult r = isospectral_search(Potential(), FrozenConfig::make({1.0}, 1, 0), o);
    CHECK(r.objective == 0.0);
    CHECK(r.qhat_norm == 0.0);
  }

  TEST_CASE("non-uniqueness at a = pi/3 and falsification at a = 1") {
    const Potential q1 = Potential::from_sine({0.5});
    const IsospectralResult r =
        isospectral_search(q1, FrozenConfig::from_fractions({Fraction::make(1, 3)}, 1, 0));
    CHECK(r.converged);
    CHECK(r.objective < 1e-8);
    CHECK(r.qhat_norm >= 0.1);
    CHECK(r.spectra_verified);
    CHECK(r.init == "witness");
    CHECK(r.seed == 20240611u);
    for (std::size_t k = 1; k < r.log.size(); ++k)
      if (r.log[k].start == r.log[k - 1].start) CHECK(r.log[k].objective <= r.log[k - 1].objective);

    const IsospectralResult u = isospectral_search(q1, FrozenConfig::make({1.0}, 1, 0));
    CHECK_FALSE(u.converged);
    CHECK(u.objective >= 1e-4);
    CHECK(u.starts == 9);
  }

  TEST_CASE("part-3 bookkeeping") {
    const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3};
    const auto cfg = FrozenConfig::make({1.0, 2.0}, 1, 0);
    const Potential q = Potential::from_sine({1.0, 0.5});
    const Part3Report full = part3_experiment(q, std::nullopt, cfg, radii);
    CHECK(std::abs(full.sine_transform.full_disk_slope - 2.0) <= 0.1);
    CHECK(std::abs(full.cos_pi.full_disk_slope - 2.0) <= 0.05);
    CHECK(std::abs(full.cos_pi.full_disk_slope / 2.0 - 1.0) <= 0.025);

    SupportWindow w;
    w.delta = 0.4;
    const Part3Report win = part3_experiment(q, w, cfg, radii);
    CHECK(win.kernel_sum_bound == doctest::Approx(4.0 / pi));
    CHECK(win.consistent);
    CHECK(win.rhs_bound == doctest::Approx(2.0 + 4.0 / pi));
  }
}
