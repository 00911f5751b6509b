#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frozenspec {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Number of uniform grid intervals on [0,pi] used by grid potentials and as the
/// base quadrature resolution.
inline constexpr int kDefaultGridIntervals = 4096;

/// Exact rational number with a positive denominator, kept in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  /// Accepts "p/q" or a plain integer. Decimals are not fractions.
  static std::optional<Fraction> parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct GridSample {
  double x = 0.0;
  double value = 0.0;
};

// Real potential on [0,pi]: a finite sine series sum c_n sin(n x), or grid
// samples, restricted to a union of closed "support" intervals (the full
// domain unless the potential was windowed). Immutable once built.
class Potential {
 public:
  Potential();

  /// coeffs[k] multiplies sin((k+1) x).
  static Potential from_sine(std::vector<double> coeffs, std::string label = {});
  /// Sparse (n, c_n) pairs; repeated modes are summed.
  static Potential from_modes(const std::vector<std::pair<int, double>>& modes, std::string label = {});
  static Potential from_grid(std::vector<GridSample> samples, std::string label = {});
  static Potential constant(double value, int intervals = kDefaultGridIntervals);
  /// General constructor; validates every invariant. An empty support means the
  /// full domain.
  static Potential make(std::vector<double> coeffs, std::vector<GridSample> samples,
                        std::vector<Interval> support, std::string label);

  const std::vector<double>& sine_coeffs() const { return coeffs_; }
  const std::vector<GridSample>& grid_samples() const { return grid_; }
  const std::vector<Interval>& support() const { return support_; }
  const std::string& label() const { return label_; }

  bool has_series() const { return !coeffs_.empty(); }
  bool is_grid_only() const { return coeffs_.empty() && !grid_.empty(); }
  bool full_support() const;
  bool is_zero() const;

  /// potential_eval; throws DomainError outside [0,pi].
  double operator()(double x) const;
  /// Value ignoring the support mask (x must already be in [0,pi]).
  double eval_unmasked(double x) const;
  /// Convex hull of the support, taking vanishing representations into account.
  std::optional<Interval> support_hull() const;

  Potential with_label(std::string label) const;
  Potential with_support(std::vector<Interval> support) const;

 private:
  std::vector<double> coeffs_;
  std::vector<GridSample> grid_;
  std::vector<Interval> support_;
  std::string label_;
};

double potential_eval(const Potential& p, double x);

/// a*p + b*q. Supports must match exactly; a grid operand turns the result into
/// a grid potential sampled on that grid.
Potential linear_combination(double a, const Potential& p, double b, const Potential& q);

/// Squared L2 norm over [0,pi].
double l2_norm_squared(const Potential& p);

/// L2 projection onto sin(n x), n = 1..modes.
Potential project_sine(const Potential& p, int modes);

/// q(t) = sin(rho0 (pi - t)), rho0 = (2 n0 + 1) / 2, stored as exact samples on
/// the default grid.
Potential witness_qhat(int n0, int intervals = kDefaultGridIntervals);

class FrozenConfig {
 public:
  static FrozenConfig make(std::vector<double> points, int alpha, int beta);
  static FrozenConfig from_fractions(const std::vector<Fraction>& points_over_pi, int alpha, int beta);

  const std::vector<double>& points() const { return points_; }
  const std::optional<std::vector<Fraction>>& rational_points() const { return rational_; }
  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  std::size_t size() const { return points_.size(); }
  double last_point() const { return points_.back(); }

  FrozenConfig with_boundary(int alpha, int beta) const;

 private:
  FrozenConfig() = default;
  std::vector<double> points_;
  std::optional<std::vector<Fraction>> rational_;
  int alpha_ = 0;
  int beta_ = 0;
};

/// {(2n+1)/2 : n_min <= n <= n_max}, the zero set of cos(rho pi).
class HalfIntegerLattice {
 public:
  HalfIntegerLattice(long n_min, long n_max);
  long n_min() const { return n_min_; }
  long n_max() const { return n_max_; }
  std::size_t size() const { return static_cast<std::size_t>(n_max_ - n_min_ + 1); }
  static double value(long n) { return static_cast<double>(2 * n + 1) / 2.0; }
  std::vector<double> values() const;

 private:
  long n_min_;
  long n_max_;
};

/// Search domain in the rho-plane.
class Region {
 public:
  enum class Kind { disk, annulus, rectangle };

  static Region disk(cplx center, double radius);
  static Region annulus(cplx center, double inner, double outer);
  static Region rectangle(cplx lower_left, cplx upper_right);

  Kind kind() const { return kind_; }
  cplx center() const { return center_; }
  double radius() const { return outer_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  cplx lower_left() const { return ll_; }
  cplx upper_right() const { return ur_; }

  bool contains(cplx z) const;
  /// Smallest axis-aligned rectangle containing the region.
  Region bounding_box() const;
  std::string describe() const;

 private:
  Region() = default;
  Kind kind_ = Kind::disk;
  cplx center_{};
  double inner_ = 0.0;
  double outer_ = 0.0;
  cplx ll_{};
  cplx ur_{};
};

// Kept region [0, delta) U (pi - delta, pi], minus an optional excluded
// neighbourhood (excluded_center +- excluded_halfwidth).
struct SupportWindow {
  double delta = 0.0;
  std::optional<double> excluded_center;
  double excluded_halfwidth = 0.0;

  void validate() const;
  /// Additionally requires 0 < delta < a_1 and a_N < pi - delta.
  void validate_for(const FrozenConfig& config) const;
  std::vector<Interval> kept_intervals() const;
};

Potential window_restrict(const Potential& p, const SupportWindow& w);

}  // namespace frozenspec
