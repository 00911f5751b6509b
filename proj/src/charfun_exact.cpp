#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "frozenspec/charfun.hpp"
#include "frozenspec/errors.hpp"
#include "hp.hpp"

namespace frozenspec {

namespace {

using detail::Hc;
using detail::mpfr_float;

// int_l^h trig(k t + phi) dt = (h - l) trig(k m + phi) sinc(k (h - l) / 2), m the midpoint.
Hc segment(bool cosine, const Hc& k, const Hc& phi, const mpfr_float& l, const mpfr_float& h) {
  const mpfr_float len = h - l;
  const mpfr_float mid = (h + l) / 2;
  const Hc arg = mid * k + phi;
  const Hc trig = cosine ? detail::hcos(arg) : detail::hsin(arg);
  return len * (trig * detail::hsinc(mpfr_float(len / 2) * k));
}

struct Exact {
  const Potential& q;
  Hc rho;
  mpfr_float pi_hp;

  mpfr_float hp_point(double x) const { return x == pi ? pi_hp : mpfr_float(x); }

  // int_{[0,a] & supp} q(t) K(rho (a - t)) dt with K = sin (divided by rho) or cos.
  Hc kernel(const mpfr_float& a, bool sine) const {
    Hc total;
    if (q.is_zero()) return total;
    const Hc ra = a * rho;
    const auto& c = q.sine_coeffs();
    for (const auto& iv : q.support()) {
      const mpfr_float lo = hp_point(iv.lo);
      const mpfr_float hi = min(hp_point(iv.hi), a);
      if (!(hi > lo)) continue;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        const Hc n{mpfr_float(static_cast<long>(j + 1)), mpfr_float(0)};
        Hc part;
        if (sine)  // sin(nt) sin(rho(a-t)) = [cos((n+rho)t - rho a) - cos((n-rho)t + rho a)] / 2
          part = segment(true, n + rho, -ra, lo, hi) - segment(true, n - rho, ra, lo, hi);
        else  // sin(nt) cos(rho(a-t)) = [sin((n+rho)t - rho a) + sin((n-rho)t + rho a)] / 2
          part = segment(false, n + rho, -ra, lo, hi) + segment(false, n - rho, ra, lo, hi);
        total = total + mpfr_float(c[j] / 2.0) * part;
      }
    }
    return sine ? total / rho : total;
  }

  Hc first_column(int alpha, const mpfr_float& a) const {
    const Hc z = a * rho;
    return alpha == 0 ? detail::hsin(z) / rho : detail::hcos(z);
  }
};

Hc hp_determinant(std::vector<std::vector<Hc>> m) {
  const std::size_t n = m.size();
  Hc det{mpfr_float(1), mpfr_float(0)};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (m[r][col].l1() > m[pivot][col].l1()) pivot = r;
    if (m[pivot][col].is_zero()) return Hc();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Hc factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - factor * m[col][c];
    }
  }
  return det;
}

}  // namespace

unsigned exact_determinant_digits(const FrozenConfig& config, cplx rho) {
  const double a_max = config.points().empty() ? 0.0 : config.points().back();
  const double loss = (std::abs(rho.imag()) * a_max) / std::log(10.0) + 3.0 * std::log10(2.0 + std::abs(rho));
  return static_cast<unsigned>(24.0 + std::ceil(loss));
}

cplx exact_sine_determinant(const Potential& q, const FrozenConfig& config, cplx rho, unsigned digits) {
  if (!q.grid_samples().empty()) throw ParameterError("exact determinant needs a sine-series potential");
  if (!(std::abs(rho) >= kSmallRho)) throw ParameterError("exact determinant needs |rho| >= 1e-6");
  const detail::PrecisionGuard guard(digits);
  const Exact ex{q, Hc(rho), boost::math::constants::pi<mpfr_float>()};

  const std::size_t n = config.size();
  std::vector<std::vector<Hc>> m(n + 1, std::vector<Hc>(n + 1));
  const Hc one{mpfr_float(1), mpfr_float(0)};
  for (std::size_t i = 0; i < n; ++i) {
    const mpfr_float a = ex.hp_point(config.points()[i]);
    m[i][0] = ex.first_column(config.alpha(), a);
    m[i][1] = ex.kernel(a, true);
  }
  m[0][1] = m[0][1] - one;
  for (std::size_t c = 2; c <= n; ++c) m[0][c] = one;
  for (std::size_t i = 1; i < n; ++i) m[i][i + 1] = -one;

  const Hc z = ex.pi_hp * ex.rho;
  if (config.alpha() == 0 && config.beta() == 0)
    m[n][0] = detail::hsin(z) / ex.rho;
  else if (config.alpha() == 1 && config.beta() == 1)
    m[n][0] = -(ex.rho * detail::hsin(z));
  else
    m[n][0] = detail::hcos(z);
  m[n][1] = ex.kernel(ex.pi_hp, config.beta() == 0);

  const cplx value = hp_determinant(std::move(m)).to_cplx();
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NumericError("non-finite characteristic function value");
  return value;
}

}  // namespace frozenspec
