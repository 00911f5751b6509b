#include "frozenspec/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frozenspec/errors.hpp"
#include "numerics.hpp"

namespace frozenspec {

namespace {

constexpr double kAgreeRel = 1e-10;
constexpr double kAgreeAbs = 1e-12;

std::vector<Interval> full_domain() { return {Interval{0.0, pi}}; }

std::vector<Interval> normalize_support(std::vector<Interval> s) {
  if (s.empty()) return full_domain();
  for (const auto& iv : s) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo < 0.0 || iv.hi > pi || iv.lo > iv.hi)
      throw ParameterError("support interval outside [0,pi] or reversed");
  }
  std::sort(s.begin(), s.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : s) {
    if (iv.hi <= iv.lo) continue;
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

std::vector<Interval> subtract(const std::vector<Interval>& a, Interval cut) {
  std::vector<Interval> out;
  for (const auto& iv : a) {
    if (cut.hi <= iv.lo || cut.lo >= iv.hi) {
      out.push_back(iv);
      continue;
    }
    if (cut.lo > iv.lo) out.push_back({iv.lo, cut.lo});
    if (cut.hi < iv.hi) out.push_back({cut.hi, iv.hi});
  }
  return out;
}

double sine_series(const std::vector<double>& c, double x) {
  // sin(n x) = Im e^{i n x}, accumulated by the Chebyshev recurrence.
  if (c.empty()) return 0.0;
  const double two_cos = 2.0 * std::cos(x);
  double s_prev = 0.0;
  double s_cur = std::sin(x);
  double sum = c[0] * s_cur;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double s_next = two_cos * s_cur - s_prev;
    s_prev = s_cur;
    s_cur = s_next;
    sum += c[k] * s_cur;
  }
  return sum;
}

double grid_interp(const std::vector<GridSample>& g, double x) {
  if (g.size() == 1) return g[0].value;
  auto it = std::upper_bound(g.begin(), g.end(), x, [](double v, const GridSample& s) { return v < s.x; });
  std::size_t i = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
  if (i >= g.size() - 1) i = g.size() - 2;
  if (x == g[i].x) return g[i].value;
  if (x == g[i + 1].x) return g[i + 1].value;
  if (g.size() < 4) {
    const double t = (x - g[i].x) / (g[i + 1].x - g[i].x);
    return (1.0 - t) * g[i].value + t * g[i + 1].value;
  }
  // Cubic Lagrange through four neighbouring samples.
  std::size_t lo = i == 0 ? 0 : i - 1;
  if (lo + 3 >= g.size()) lo = g.size() - 4;
  double sum = 0.0;
  for (std::size_t k = lo; k < lo + 4; ++k) {
    double basis = 1.0;
    for (std::size_t m = lo; m < lo + 4; ++m)
      if (m != k) basis *= (x - g[m].x) / (g[k].x - g[m].x);
    sum += basis * g[k].value;
  }
  return sum;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string("non-finite ") + what);
}

}  // namespace

// ---------------------------------------------------------------- Fraction

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{num, den};
}

std::optional<Fraction> Fraction::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [](std::string_view s, std::int64_t& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  std::int64_t num = 0, den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!parse_int(trim(text.substr(0, slash)), num) || !parse_int(trim(text.substr(slash + 1)), den) || den == 0)
      return std::nullopt;
  } else if (!parse_int(text, num)) {
    return std::nullopt;
  }
  return make(num, den);
}

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------- Potential

Potential::Potential() : support_(full_domain()) {}

Potential Potential::make(std::vector<double> coeffs, std::vector<GridSample> samples,
                          std::vector<Interval> support, std::string label) {
  for (double c : coeffs) check_finite(c, "sine coefficient");
  for (const auto& s : samples) {
    check_finite(s.x, "grid abscissa");
    check_finite(s.value, "grid sample");
    if (s.x < 0.0 || s.x > pi) throw DomainError("grid sample outside [0,pi]");
  }
  std::sort(samples.begin(), samples.end(), [](const GridSample& a, const GridSample& b) { return a.x < b.x; });
  for (std::size_t k = 1; k < samples.size(); ++k)
    if (samples[k].x == samples[k - 1].x) throw ParameterError("duplicate grid abscissa");

  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();

  Potential p;
  p.coeffs_ = std::move(coeffs);
  p.grid_ = std::move(samples);
  p.support_ = normalize_support(std::move(support));
  p.label_ = std::move(label);

  if (p.has_series()) {
    for (const auto& s : p.grid_) {
      const double series = sine_series(p.coeffs_, s.x);
      if (std::abs(series - s.value) > kAgreeAbs + kAgreeRel * std::abs(s.value))
        throw ParameterError("sine series and grid samples disagree at x = " + std::to_string(s.x));
    }
  }
  return p;
}

Potential Potential::from_sine(std::vector<double> coeffs, std::string label) {
  return make(std::move(coeffs), {}, {}, std::move(label));
}

Potential Potential::from_modes(const std::vector<std::pair<int, double>>& modes, std::string label) {
  std::vector<double> c;
  for (const auto& [n, value] : modes) {
    if (n < 1) throw ParameterError("sine mode index must be >= 1");
    if (static_cast<std::size_t>(n) > c.size()) c.resize(static_cast<std::size_t>(n), 0.0);
    c[static_cast<std::size_t>(n) - 1] += value;
  }
  return from_sine(std::move(c), std::move(label));
}

Potential Potential::from_grid(std::vector<GridSample> samples, std::string label) {
  return make({}, std::move(samples), {}, std::move(label));
}

Potential Potential::constant(double value, int intervals) {
  if (intervals < 1) throw ParameterError("grid needs at least one interval");
  std::vector<GridSample> s(static_cast<std::size_t>(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) s[static_cast<std::size_t>(j)] = {pi * j / intervals, value};
  s.back().x = pi;
  return from_grid(std::move(s), "constant");
}

bool Potential::full_support() const { return support_.size() == 1 && support_[0] == Interval{0.0, pi}; }

bool Potential::is_zero() const {
  if (support_.empty()) return true;
  const bool c0 = std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
  if (has_series()) return c0;
  return std::all_of(grid_.begin(), grid_.end(), [](const GridSample& s) { return s.value == 0.0; });
}

double Potential::eval_unmasked(double x) const {
  if (has_series()) return sine_series(coeffs_, x);
  if (!grid_.empty()) return grid_interp(grid_, x);
  return 0.0;
}

double Potential::operator()(double x) const {
  if (!(x >= 0.0 && x <= pi)) throw DomainError("potential evaluated outside [0,pi]");
  const bool inside = std::any_of(support_.begin(), support_.end(),
                                  [x](const Interval& iv) { return x >= iv.lo && x <= iv.hi; });
  return inside ? eval_unmasked(x) : 0.0;
}

std::optional<Interval> Potential::support_hull() const {
  if (is_zero()) return std::nullopt;
  return Interval{support_.front().lo, support_.back().hi};
}

Potential Potential::with_label(std::string label) const {
  Potential p = *this;
  p.label_ = std::move(label);
  return p;
}

Potential Potential::with_support(std::vector<Interval> support) const {
  Potential p = *this;
  p.support_ = support.empty() ? std::vector<Interval>{} : normalize_support(std::move(support));
  return p;
}

double potential_eval(const Potential& p, double x) { return p(x); }

Potential linear_combination(double a, const Potential& p, double b, const Potential& q) {
  if (p.support() != q.support()) throw ParameterError("linear combination of potentials with different supports");
  const std::string label = p.label().empty() && q.label().empty() ? std::string{} : "combination";
  if (p.support().empty()) return Potential{}.with_support({}).with_label(label);
  if (!p.is_grid_only() && !q.is_grid_only()) {
    std::vector<double> c(std::max(p.sine_coeffs().size(), q.sine_coeffs().size()), 0.0);
    for (std::size_t k = 0; k < p.sine_coeffs().size(); ++k) c[k] += a * p.sine_coeffs()[k];
    for (std::size_t k = 0; k < q.sine_coeffs().size(); ++k) c[k] += b * q.sine_coeffs()[k];
    return Potential::make(std::move(c), {}, p.support(), label);
  }
  const auto& nodes = p.is_grid_only() ? p.grid_samples() : q.grid_samples();
  if (p.is_grid_only() && q.is_grid_only()) {
    if (p.grid_samples().size() != q.grid_samples().size()) throw ParameterError("grid potentials on different grids");
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (p.grid_samples()[k].x != q.grid_samples()[k].x) throw ParameterError("grid potentials on different grids");
  }
  std::vector<GridSample> s(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    s[k] = {nodes[k].x, a * p.eval_unmasked(nodes[k].x) + b * q.eval_unmasked(nodes[k].x)};
  return Potential::make({}, std::move(s), p.support(), label);
}

double l2_norm_squared(const Potential& p) {
  if (p.has_series() && p.full_support()) {
    double s = 0.0;
    for (double c : p.sine_coeffs()) s += c * c;
    return 0.5 * pi * s;
  }
  double total = 0.0;
  for (const auto& iv : p.support()) {
    const int n = detail::panel_count(iv.length(), kDefaultGridIntervals);
    total += detail::simpson(iv.lo, iv.hi, n, [&](double t) {
      const double v = p.eval_unmasked(t);
      return v * v;
    });
  }
  return total;
}

Potential project_sine(const Potential& p, int modes) {
  if (modes < 1) throw ParameterError("projection needs at least one mode");
  std::vector<double> c(static_cast<std::size_t>(modes), 0.0);
  for (const auto& iv : p.support()) {
    const int n = detail::panel_count(iv.length(), kDefaultGridIntervals);
    for (int m = 1; m <= modes; ++m) {
      c[static_cast<std::size_t>(m) - 1] += (2.0 / pi) * detail::simpson(iv.lo, iv.hi, n, [&](double t) {
        return p.eval_unmasked(t) * std::sin(m * t);
      });
    }
  }
  return Potential::from_sine(std::move(c), p.label().empty() ? "projection" : p.label() + " (sine projection)");
}

Potential witness_qhat(int n0, int intervals) {
  if (n0 < 1) throw ParameterError("witness_qhat needs n0 >= 1");
  if (intervals < 2 || intervals % 2) throw ParameterError("witness grid needs an even interval count");
  const double rho0 = (2.0 * n0 + 1.0) / 2.0;
  std::vector<GridSample> s(static_cast<std::size_t>(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) {
    const double t = j == intervals ? pi : pi * j / intervals;
    s[static_cast<std::size_t>(j)] = {t, std::sin(rho0 * (pi - t))};
  }
  return Potential::from_grid(std::move(s), "witness n0=" + std::to_string(n0));
}

// ---------------------------------------------------------------- FrozenConfig

FrozenConfig FrozenConfig::make(std::vector<double> points, int alpha, int beta) {
  if (points.empty()) throw ParameterError("at least one frozen point is required");
  if ((alpha != 0 && alpha != 1) || (beta != 0 && beta != 1)) throw ParameterError("alpha and beta must be 0 or 1");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]) || points[i] <= 0.0 || points[i] >= pi)
      throw ParameterError("frozen points must lie strictly inside (0,pi)");
    if (i > 0 && points[i] <= points[i - 1]) throw ParameterError("frozen points must be strictly ascending");
  }
  FrozenConfig c;
  c.points_ = std::move(points);
  c.alpha_ = alpha;
  c.beta_ = beta;
  return c;
}

FrozenConfig FrozenConfig::from_fractions(const std::vector<Fraction>& points_over_pi, int alpha, int beta) {
  std::vector<double> pts;
  pts.reserve(points_over_pi.size());
  for (const auto& f : points_over_pi) pts.push_back(f.value() * pi);
  FrozenConfig c = make(std::move(pts), alpha, beta);
  for (std::size_t i = 0; i < points_over_pi.size(); ++i)
    if (std::abs(c.points_[i] - points_over_pi[i].value() * pi) >= 1e-14)
      throw ParameterError("rational point does not match its decimal value");
  c.rational_ = points_over_pi;
  return c;
}

FrozenConfig FrozenConfig::with_boundary(int alpha, int beta) const {
  FrozenConfig c = make(points_, alpha, beta);
  c.rational_ = rational_;
  return c;
}

// ---------------------------------------------------------------- lattice / region

HalfIntegerLattice::HalfIntegerLattice(long n_min, long n_max) : n_min_(n_min), n_max_(n_max) {
  if (n_min > n_max) throw ParameterError("lattice needs n_min <= n_max");
}

std::vector<double> HalfIntegerLattice::values() const {
  std::vector<double> v;
  v.reserve(size());
  for (long n = n_min_; n <= n_max_; ++n) v.push_back(value(n));
  return v;
}

Region Region::disk(cplx center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("disk radius must be positive");
  Region r;
  r.kind_ = Kind::disk;
  r.center_ = center;
  r.outer_ = radius;
  return r;
}

Region Region::annulus(cplx center, double inner, double outer) {
  if (!(inner > 0.0) || !(outer > inner) || !std::isfinite(outer))
    throw ParameterError("annulus needs 0 < inner < outer");
  Region r;
  r.kind_ = Kind::annulus;
  r.center_ = center;
  r.inner_ = inner;
  r.outer_ = outer;
  return r;
}

Region Region::rectangle(cplx lower_left, cplx upper_right) {
  if (!(lower_left.real() < upper_right.real()) || !(lower_left.imag() < upper_right.imag()))
    throw ParameterError("rectangle corners must be ordered");
  Region r;
  r.kind_ = Kind::rectangle;
  r.ll_ = lower_left;
  r.ur_ = upper_right;
  r.center_ = 0.5 * (lower_left + upper_right);
  return r;
}

bool Region::contains(cplx z) const {
  switch (kind_) {
    case Kind::disk:
      return std::abs(z - center_) <= outer_;
    case Kind::annulus: {
      const double d = std::abs(z - center_);
      return d >= inner_ && d <= outer_;
    }
    case Kind::rectangle:
      return z.real() >= ll_.real() && z.real() <= ur_.real() && z.imag() >= ll_.imag() && z.imag() <= ur_.imag();
  }
  return false;
}

Region Region::bounding_box() const {
  if (kind_ == Kind::rectangle) return *this;
  return rectangle(center_ - cplx(outer_, outer_), center_ + cplx(outer_, outer_));
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::disk:
      os << "disk(center=" << center_.real() << "," << center_.imag() << ";radius=" << outer_ << ")";
      break;
    case Kind::annulus:
      os << "annulus(center=" << center_.real() << "," << center_.imag() << ";inner=" << inner_
         << ";outer=" << outer_ << ")";
      break;
    case Kind::rectangle:
      os << "rectangle(" << ll_.real() << "," << ll_.imag() << ";" << ur_.real() << "," << ur_.imag() << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- windows

void SupportWindow::validate() const {
  if (!(delta > 0.0) || !(delta < 0.5 * pi)) throw ParameterError("delta_window must lie in (0, pi/2)");
  if (excluded_center) {
    if (!std::isfinite(*excluded_center) || *excluded_center <= 0.0 || *excluded_center >= pi)
      throw ParameterError("excluded centre must lie in (0,pi)");
    if (!(excluded_halfwidth >= 0.0)) throw ParameterError("exclusion half-width must be non-negative");
  }
}

void SupportWindow::validate_for(const FrozenConfig& config) const {
  validate();
  if (!(delta < config.points().front()) || !(config.last_point() < pi - delta))
    throw ParameterError("window must satisfy 0 < delta < a_1 and a_N < pi - delta");
}

std::vector<Interval> SupportWindow::kept_intervals() const {
  std::vector<Interval> kept{{0.0, delta}, {pi - delta, pi}};
  if (excluded_center && excluded_halfwidth > 0.0)
    kept = subtract(kept, {*excluded_center - excluded_halfwidth, *excluded_center + excluded_halfwidth});
  return kept;
}

Potential window_restrict(const Potential& p, const SupportWindow& w) {
  w.validate();
  auto support = intersect(p.support(), w.kept_intervals());
  Potential out = p.with_support({});
  if (!support.empty()) out = p.with_support(std::move(support));
  return out.with_label(p.label().empty() ? "windowed" : p.label() + " (windowed)");
}

}  // namespace frozenspec
