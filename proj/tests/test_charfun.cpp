#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "frozenspec/charfun.hpp"
#include "frozenspec/errors.hpp"

using namespace frozenspec;

namespace {

// int_0^a sin(n t) sin(rho (a - t)) / rho dt and the cosine-kernel analogue, by Laplace convolution.
cplx sine_kernel_exact(int n, double a, cplx rho) {
  return (static_cast<double>(n) * std::sin(rho * a) - rho * std::sin(n * a)) / (rho * (double(n * n) - rho * rho));
}
cplx cosine_kernel_exact(int n, double a, cplx rho) {
  return static_cast<double>(n) * (std::cos(rho * a) - std::cos(n * a)) / (double(n * n) - rho * rho);
}

cplx series_kernel(const std::vector<double>& c, double a, cplx rho, bool sine) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    s += c[k] * (sine ? sine_kernel_exact(int(k) + 1, a, rho) : cosine_kernel_exact(int(k) + 1, a, rho));
  return s;
}

// Leibniz expansion.
cplx leibniz(const std::vector<std::vector<cplx>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    cplx term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// The literal matrix built from closed-form entries.
std::vector<std::vector<cplx>> literal(const std::vector<double>& a, int alpha, int beta, const std::vector<double>& c,
                                       cplx rho) {
  const std::size_t n = a.size();
  std::vector<std::vector<cplx>> m(n + 1, std::vector<cplx>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][0] = alpha == 0 ? std::sin(rho * a[i]) / rho : std::cos(rho * a[i]);
    m[i][1] = series_kernel(c, a[i], rho, true);
  }
  m[0][1] -= 1.0;
  for (std::size_t j = 2; j <= n; ++j) m[0][j] = 1.0;
  for (std::size_t i = 1; i < n; ++i) m[i][i + 1] = -1.0;
  if (alpha == 0 && beta == 0)
    m[n][0] = std::sin(rho * pi) / rho;
  else if (alpha == 1 && beta == 1)
    m[n][0] = -rho * std::sin(rho * pi);
  else
    m[n][0] = std::cos(rho * pi);
  m[n][1] = series_kernel(c, pi, rho, beta == 0);
  return m;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace

TEST_SUITE("charfun") {
  TEST_CASE("kernel integral examples") {
    CHECK(kernel_integral(Potential(), 1.0, {2.0, 1.0}, KernelKind::sine) == cplx(0.0));
    const Potential one = Potential::constant(1.0);
    CHECK(std::abs(kernel_integral(one, pi, 2.0, KernelKind::sine)) <= 1e-12);
    CHECK(kernel_integral(one, pi, 0.0, KernelKind::sine).real() == doctest::Approx(pi * pi / 2).epsilon(1e-10));
    CHECK(kernel_integral(one, pi, 1e-8, KernelKind::sine).real() == doctest::Approx(pi * pi / 2).epsilon(1e-10));
  }

  TEST_CASE("kernel integral preconditions") {
    const Potential q = Potential::from_sine({1.0});
    CHECK_THROWS_AS(kernel_integral(q, 0.0, 1.0, KernelKind::sine), ParameterError);
    CHECK_THROWS_AS(kernel_integral(q, 3.5, 1.0, KernelKind::sine), ParameterError);
    CHECK_THROWS_AS(kernel_integral(q, 1.0, {std::nan(""), 0.0}, KernelKind::sine), ParameterError);
    CHECK_THROWS_AS(kernel_integral(q, 1.0, 600.0, KernelKind::cosine), ParameterError);
  }

  TEST_CASE("kernel integrals match the convolution formulas") {
    const std::vector<double> c = {0.7, -0.3, 0.0, 1.1};
    const Potential q = Potential::from_sine(c);
    for (cplx rho : {cplx(0.3, 0.0), cplx(2.5, 0.7), cplx(17.0, -3.0), cplx(120.0, 2.0), cplx(-40.0, 9.0)})
      for (double a : {0.4, 1.9, pi}) {
        CHECK(rel(kernel_integral(q, a, rho, KernelKind::sine), series_kernel(c, a, rho, true)) <= 1e-12);
        CHECK(rel(kernel_integral(q, a, rho, KernelKind::cosine), series_kernel(c, a, rho, false)) <= 1e-12);
      }
  }

  TEST_CASE("kernel integrals are linear in q") {
    const Potential q1 = Potential::from_sine({0.5, 1.0, -2.0});
    const Potential q2 = Potential::from_sine({-1.5, 0.0, 0.25, 3.0});
    const Potential comb = linear_combination(2.0, q1, -0.7, q2);
    for (cplx rho : {cplx(1.2, 0.3), cplx(33.0, -4.0)}) {
      const cplx lhs = kernel_integral(comb, 2.2, rho, KernelKind::sine);
      const cplx rhs = 2.0 * kernel_integral(q1, 2.2, rho, KernelKind::sine) -
                       0.7 * kernel_integral(q2, 2.2, rho, KernelKind::sine);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
    }
  }

  TEST_CASE("q = 0, N = 2, rho = 0.5") {
    const CharFun cf(FrozenConfig::make({pi / 3, 2 * pi / 3}, 0, 0), Potential());
    const cplx det = cf.eval_det(0.5);
    CHECK(std::abs(std::abs(det) - 2.0) <= 1e-14);
    CHECK(rel(cf.eval_closed(0.5), det) <= 1e-14);
    const auto m = cf.matrix(0.5);
    CHECK(rel(leibniz(m), det) <= 1e-14);
  }

  TEST_CASE("Dirichlet zeros and the (1,1) origin") {
    const CharFun cf(FrozenConfig::make({1.0, 2.0}, 0, 0), Potential());
    for (int n = 1; n <= 6; ++n) {
      CHECK(std::abs(cf.eval_det(double(n))) <= 1e-13);
      CHECK(std::abs(cf.eval_closed(double(n))) <= 1e-13);
    }
    const CharFun c11(FrozenConfig::make({1.0}, 1, 1), Potential());
    CHECK(std::abs(c11.eval_closed(0.0)) == 0.0);
    CHECK(std::abs(c11.eval_det(0.0)) == 0.0);
  }

  TEST_CASE("closed form collapses to the last-row entry for q = 0") {
    for (int ab = 0; ab < 4; ++ab) {
      const int alpha = ab / 2, beta = ab % 2;
      const CharFun cf(FrozenConfig::make({0.5, 1.5, 2.5}, alpha, beta), Potential());
      for (cplx rho : {cplx(0.7, 0.2), cplx(3.3, -1.0)})
        CHECK(rel(std::abs(cf.eval_closed(rho)), std::abs(last_row_entry(alpha, beta, rho))) <= 1e-14);
    }
  }

  TEST_CASE("q = 0 Dirichlet ratio is constant") {
    const CharFun cf(FrozenConfig::make({0.8, 2.1}, 0, 0), Potential());
    const cplx r0 = cf(0.37) / (std::sin(0.37 * pi) / 0.37);
    CHECK(std::abs(std::abs(r0) - 1.0) <= 1e-12);
    for (int k = 1; k < 60; ++k) {
      const double rho = 0.37 + 0.21 * k;
      const cplx s = std::sin(rho * pi) / rho;
      if (std::abs(s) < 1e-3) continue;
      CHECK(std::abs(cf(rho) / s - r0) <= 1e-9);
    }
  }

  TEST_CASE("both paths agree with an independent Leibniz expansion") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int ab = 0; ab < 4; ++ab) {
      const std::vector<double> a = {0.6, 1.4, 2.9};
      std::vector<double> c(5);
      for (auto& v : c) v = g(rng);
      const CharFun cf(FrozenConfig::make(a, ab / 2, ab % 2), Potential::from_sine(c));
      for (cplx rho : {cplx(3.0, 2.0), cplx(0.4, -0.1), cplx(7.5, 0.5)}) {
        const cplx oracle = static_cast<double>(cf.sign()) * leibniz(literal(a, ab / 2, ab % 2, c, rho));
        const cplx oracle_det = leibniz(literal(a, ab / 2, ab % 2, c, rho));
        CHECK(rel(cf.eval_det(rho), oracle_det) <= 1e-11);
        CHECK(rel(cf.eval_closed(rho), oracle) <= 1e-10);
      }
    }
  }

  TEST_CASE("path agreement deep in the complex plane") {
    const CharFun cf(FrozenConfig::make({0.3, 1.7, 3.0}, 1, 0), Potential::from_sine({0.9, -0.4, 0.2, 0.05}));
    CHECK(cf.exact_determinant());
    for (cplx rho : {cplx(0.0, 40.0), cplx(25.0, -30.0), cplx(-48.0, 10.0)}) {
      const cplx det = cf.eval_det(rho);
      CHECK(std::abs(det - cf.eval_closed(rho)) <= 1e-10 * (1.0 + std::abs(det)));
    }
    CHECK(exact_determinant_digits(cf.config(), {0.0, 40.0}) > 60);
  }

  TEST_CASE("grid potentials use the double determinant") {
    const Potential q = project_sine(witness_qhat(2), 8);
    const CharFun with_series(FrozenConfig::make({1.0}, 0, 0), q);
    const CharFun with_grid(FrozenConfig::make({1.0}, 0, 0), witness_qhat(2));
    CHECK_FALSE(with_grid.exact_determinant());
    const cplx rho{2.3, 0.4};
    CHECK(rel(with_grid.eval_det(rho), with_grid.eval_closed(rho)) <= 1e-10);
    CHECK(rel(with_series.eval_det(rho), with_grid.eval_det(rho)) <= 1e-3);
  }

  TEST_CASE("Delta is even in rho") {
    const CharFun cf(FrozenConfig::make({0.9, 2.2}, 0, 1), Potential::from_sine({1.0, 0.5, -0.25}));
    for (cplx rho : {cplx(1.1, 0.0), cplx(4.0, 2.5), cplx(-13.0, 0.7)}) {
      CHECK(rel(cf.eval_closed(-rho), cf.eval_closed(rho)) <= 1e-10);
      CHECK(rel(cf.eval_det(-rho), cf.eval_det(rho)) <= 1e-10);
    }
  }

  TEST_CASE("charfun_grid") {
    const CharFun cf(FrozenConfig::make({0.5, 1.0, 2.0}, 1, 0), Potential::from_sine({0.3, 0.2}));
    CHECK(charfun_grid(cf, {}).empty());
    const std::vector<cplx> one = {cplx(1.3, 0.2)};
    CHECK(charfun_grid(cf, one)[0] == cf.eval_closed(one[0]));

    std::vector<cplx> grid(10000);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = 0.005 * static_cast<double>(k);
    const auto values = charfun_grid(cf, grid);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (int s = 0; s < 20; ++s) {
      const std::size_t k = pick(rng);
      CHECK(values[k] == cf(grid[k]));
    }
    const std::vector<cplx> bad = {cplx(1.0), cplx(900.0)};
    CHECK_THROWS_WITH_AS(charfun_grid(cf, bad), doctest::Contains("sample 1"), Error);
  }

  TEST_CASE("determinant helper") {
    CHECK(determinant({{2.0, 1.0}, {4.0, 3.0}}) == cplx(2.0));
    CHECK(determinant({{0.0, 1.0}, {1.0, 0.0}}) == cplx(-1.0));
    CHECK(determinant({{1.0, 2.0}, {2.0, 4.0}}) == cplx(0.0));
    CHECK_THROWS_AS(determinant({{1.0, 2.0}}), ParameterError);
  }
}
