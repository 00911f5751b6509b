#include "frozenspec/density_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "frozenspec/errors.hpp"
#include "hp.hpp"

namespace frozenspec {

namespace {

using boost::multiprecision::mpfr_float;
using detail::PrecisionGuard;

constexpr double kNumericZero = 1e-12;
constexpr long kMaxPeriod = 10'000'000;

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double lattice_value(const std::vector<double>& points, long n) {
  double s = 0.0;
  for (double a : points) s += std::cos(static_cast<double>(2 * n + 1) * a / 2.0);
  return s;
}

double relative(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

cplx cosine_sum(std::span<const double> points, cplx rho) {
  cplx s = 0.0;
  for (double a : points) s += std::cos(rho * a);
  return s;
}

const char* lattice_method_name(LatticeMethod m) {
  return m == LatticeMethod::exact_period_scan ? "exact_period_scan" : "numeric_scan";
}

std::string LatticeDensityReport::to_csv() const {
  std::ostringstream os;
  os << "n,s,is_zero\n";
  for (const auto& s : samples) os << s.n << ',' << decimal(s.value) << ',' << (s.is_zero ? 1 : 0) << '\n';
  return os.str();
}

LatticeDensityReport lattice_vanishing_density(const FrozenConfig& config, long n_max) {
  return lattice_vanishing_density(config, n_max,
                                   config.rational_points() ? LatticeMethod::exact_period_scan
                                                            : LatticeMethod::numeric_scan);
}

LatticeDensityReport lattice_vanishing_density(const FrozenConfig& config, long n_max, LatticeMethod method,
                                               int digits) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  if (n_max > kMaxPeriod) throw ParameterError("n_max is too large");
  LatticeDensityReport rep;
  rep.method = method;
  rep.n_max = n_max;
  const auto& pts = config.points();

  if (method == LatticeMethod::numeric_scan) {
    for (double a : pts) rep.points_over_pi.push_back(decimal(a / pi));
    rep.threshold = kNumericZero;
    long zeros = 0;
    for (long n = 0; n <= n_max; ++n) {
      const double v = lattice_value(pts, n);
      const bool z = std::abs(v) < kNumericZero;
      zeros += z;
      rep.samples.push_back({n, v, z});
    }
    rep.vanishing_fraction = static_cast<double>(zeros) / static_cast<double>(n_max + 1);
    return rep;
  }

  if (!config.rational_points())
    throw ModeError("exact lattice scan needs every frozen point given as a rational multiple of pi");
  if (digits < 20 || digits > 10000) throw ParameterError("precision must be between 20 and 10000 digits");
  const auto& fr = *config.rational_points();
  for (const auto& f : fr) rep.points_over_pi.push_back(f.str());

  long period = 1;
  for (const auto& f : fr) {
    period = std::lcm(period, 2 * static_cast<long>(f.den));
    if (period > kMaxPeriod) throw ParameterError("lattice period exceeds the scan limit");
  }

  rep.digits = digits;
  rep.threshold = std::pow(10.0, -0.6 * digits);
  std::vector<double> values(static_cast<std::size_t>(period));
  std::vector<char> zero(static_cast<std::size_t>(period));
  {
    const PrecisionGuard guard(static_cast<unsigned>(digits));
    const mpfr_float pi_hp = boost::math::constants::pi<mpfr_float>();
    const mpfr_float tiny(rep.threshold);
    // cos(k pi / (2 q)) depends on k mod 4q only; cache per point.
    std::vector<std::map<long, mpfr_float>> cache(fr.size());
    for (long n = 0; n < period; ++n) {
      mpfr_float s = 0;
      for (std::size_t i = 0; i < fr.size(); ++i) {
        const long q4 = 4 * static_cast<long>(fr[i].den);
        long k = ((2 * n + 1) % q4) * (static_cast<long>(fr[i].num) % q4) % q4;
        if (k < 0) k += q4;
        auto it = cache[i].find(k);
        if (it == cache[i].end())
          it = cache[i].emplace(k, boost::multiprecision::cos(pi_hp * k / (2 * static_cast<long>(fr[i].den)))).first;
        s += it->second;
      }
      values[static_cast<std::size_t>(n)] = s.convert_to<double>();
      zero[static_cast<std::size_t>(n)] = boost::multiprecision::abs(s) < tiny;
    }
  }

  const long zeros = std::count(zero.begin(), zero.end(), 1);
  rep.period = period;
  rep.exact_fraction = Fraction::make(zeros, period);
  rep.vanishing_fraction = rep.exact_fraction->value();
  for (long n = 0; n <= n_max; ++n) {
    const auto r = static_cast<std::size_t>(n % period);
    rep.samples.push_back({n, zero[r] ? 0.0 : values[r], zero[r] != 0});
  }
  return rep;
}

SumRuleReport density_sum_rule_check(const ComplexFunction& f, const ComplexFunction& g,
                                     std::span<const double> radii, const WindingOptions& options) {
  SumRuleReport rep;
  rep.f = density_estimate(f, radii, false, options);
  rep.g = density_estimate(g, radii, false, options);
  const ComplexFunction fg = [&](cplx z) { return f(z) * g(z); };
  rep.product = density_estimate(fg, radii, false, options);
  const double df = rep.f.full_disk_slope, dg = rep.g.full_disk_slope;
  rep.product_residual = std::abs(rep.product.full_disk_slope - df - dg);
  rep.product_relative = relative(rep.product_residual, df + dg);

  const double combined = std::hypot(rep.f.full_disk_stderr, rep.g.full_disk_stderr);
  if (!(std::abs(df - dg) > std::max(2.0 * combined, 1e-9))) {
    rep.skip_reason = "densities are not distinguishable (|d(f) - d(g)| <= 2 combined stderr)";
    return rep;
  }
  const ComplexFunction fpg = [&](cplx z) { return f(z) + g(z); };
  rep.sum = density_estimate(fpg, radii, false, options);
  rep.sum_checked = true;
  const double mx = std::max(df, dg);
  rep.sum_residual = std::abs(rep.sum.full_disk_slope - mx);
  rep.sum_relative = relative(rep.sum_residual, mx);
  return rep;
}

TransformDensityReport transform_density_check(const Potential& f, std::span<const double> radii,
                                               const WindingOptions& options) {
  if (f.is_zero()) throw NumericError("transform of the zero function has no zero density");
  const auto make = [&](TransformKind kind) {
    auto quad = std::make_shared<KernelQuadrature>(f, pi, 0.0, 1.0);
    const Kernel k = kind == TransformKind::exponential ? Kernel::exp_minus_i
                     : kind == TransformKind::cosine    ? Kernel::cos
                                                        : Kernel::sin;
    return ComplexFunction([quad, k](cplx z) { return (*quad)(z, k); });
  };
  const std::array<TransformKind, 3> kinds = {TransformKind::exponential, TransformKind::cosine, TransformKind::sine};
  std::array<DensityReport, 3> d;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const ComplexFunction fn = make(kinds[i]);
    double peak = 0.0;
    for (cplx z : {cplx(0.7, 0.0), cplx(1.3, 0.2), cplx(2.9, -0.4)}) peak = std::max(peak, std::abs(fn(z)));
    if (peak < 1e-14) throw NumericError("transform is numerically zero");
    d[i] = density_estimate(fn, radii, false, options);
  }
  TransformDensityReport rep;
  rep.exponential = d[0];
  rep.cosine = d[1];
  rep.sine = d[2];
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  rep.within_stderr = true;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& a = d[static_cast<std::size_t>(pairs[k].first)];
    const auto& b = d[static_cast<std::size_t>(pairs[k].second)];
    rep.differences[k] = a.full_disk_slope - b.full_disk_slope;
    rep.combined_stderr[k] = std::hypot(a.full_disk_stderr, b.full_disk_stderr);
    if (std::abs(rep.differences[k]) > 3.0 * rep.combined_stderr[k]) rep.within_stderr = false;
    rep.max_relative_difference =
        std::max(rep.max_relative_difference,
                 relative(std::abs(rep.differences[k]), std::max(a.full_disk_slope, b.full_disk_slope)));
  }
  return rep;
}

ComplexFunction sine_kernel_transform(const Potential& q, int base_panels) {
  auto quad = std::make_shared<KernelQuadrature>(q, pi, pi, -1.0, base_panels);
  return [quad](cplx z) { return (*quad)(z, Kernel::sin); };
}

ProportionalityReport support_proportionality_check(const Potential& partial, const Potential& full,
                                                    std::span<const double> radii, const WindingOptions& options) {
  const auto hp = partial.support_hull();
  const auto hf = full.support_hull();
  if (!hp || !hf) throw NumericError("proportionality check needs nonzero potentials");
  ProportionalityReport rep;
  rep.partial = density_estimate(sine_kernel_transform(partial), radii, false, options);
  rep.full = density_estimate(sine_kernel_transform(full), radii, false, options);
  rep.ratio = relative(rep.partial.full_disk_slope, rep.full.full_disk_slope);
  rep.predicted = hp->length() / hf->length();
  return rep;
}

std::optional<ComplexFunction> builtin_function(const std::string& name) {
  if (name == "cos_pi") return ComplexFunction([](cplx z) { return std::cos(pi * z); });
  if (name == "cos_half_pi") return ComplexFunction([](cplx z) { return std::cos(0.5 * pi * z); });
  if (name == "sinc_pi")
    return ComplexFunction([](cplx z) {
      if (std::abs(z) < 1e-8) return cplx(1.0 - pi * pi * z * z / 6.0);
      return std::sin(pi * z) / (pi * z);
    });
  if (name == "exp_indicator")
    return ComplexFunction([](cplx z) {
      const cplx i{0.0, 1.0};
      if (std::abs(z) < 1e-8) return cplx(pi) - i * pi * pi * z / 2.0;
      return (1.0 - std::exp(-i * pi * z)) / (i * z);
    });
  return std::nullopt;
}

}  // namespace frozenspec
