#pragma once

// Multiprecision helpers: a precision guard and a small complex type over mpfr_float.

#include <mutex>

#include <boost/multiprecision/mpfr.hpp>

#include "frozenspec/model.hpp"

namespace frozenspec::detail {

using boost::multiprecision::mpfr_float;

// mpfr_float's default precision is process-wide in this boost version, so
// every multiprecision section holds one lock.
inline std::mutex& precision_mutex() {
  static std::mutex m;
  return m;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : lock_(precision_mutex()), saved_(mpfr_float::default_precision()) {
    mpfr_float::default_precision(digits);
  }
  ~PrecisionGuard() { mpfr_float::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

struct Hc {
  mpfr_float re, im;

  Hc() : re(0), im(0) {}
  Hc(const mpfr_float& r, const mpfr_float& i) : re(r), im(i) {}
  explicit Hc(cplx z) : re(z.real()), im(z.imag()) {}

  cplx to_cplx() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  mpfr_float l1() const { return abs(re) + abs(im); }
  bool is_zero() const { return re == 0 && im == 0; }
};

inline Hc operator+(const Hc& a, const Hc& b) { return {a.re + b.re, a.im + b.im}; }
inline Hc operator-(const Hc& a, const Hc& b) { return {a.re - b.re, a.im - b.im}; }
inline Hc operator-(const Hc& a) { return {-a.re, -a.im}; }
inline Hc operator*(const Hc& a, const Hc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Hc operator*(const mpfr_float& s, const Hc& a) { return {s * a.re, s * a.im}; }
inline Hc operator/(const Hc& a, const Hc& b) {
  const mpfr_float d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Hc hsin(const Hc& z) {
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}
inline Hc hcos(const Hc& z) {
  return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}
/// sin(z)/z with value 1 at z = 0.
inline Hc hsinc(const Hc& z) {
  if (z.is_zero()) return {mpfr_float(1), mpfr_float(0)};
  return hsin(z) / z;
}

}  // namespace frozenspec::detail
