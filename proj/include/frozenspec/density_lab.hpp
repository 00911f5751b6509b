#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frozenspec/charfun.hpp"
#include "frozenspec/model.hpp"
#include "frozenspec/zeros.hpp"

namespace frozenspec {

/// Default decimal digits for quasi-exact zero tests.
inline constexpr int kDefaultPrecisionDigits = 50;

/// sum_i cos(rho a_i).
cplx cosine_sum(std::span<const double> points, cplx rho);

enum class LatticeMethod { exact_period_scan, numeric_scan };

const char* lattice_method_name(LatticeMethod m);

struct LatticeSample {
  long n = 0;
  double value = 0.0;  // s(n) = sum_i cos((2n+1) a_i / 2)
  bool is_zero = false;
};

struct LatticeDensityReport {
  std::vector<std::string> points_over_pi;  // fractions, or a_i / pi as decimals
  LatticeMethod method = LatticeMethod::numeric_scan;
  double vanishing_fraction = 0.0;
  std::optional<Fraction> exact_fraction;  // exact method only
  std::optional<long> period;              // exact method only
  long n_max = 0;
  int digits = 0;          // working precision of the exact method
  double threshold = 0.0;  // zero threshold actually used
  std::vector<LatticeSample> samples;  // n = 0..n_max

  /// n,s(n),is_zero rows with a header.
  std::string to_csv() const;
};

/// Natural density within Z of {n : s(n) = 0}. Exact mode scans one full period
/// P = lcm(2 q_i) at `digits` decimal digits and thresholds at 10^(-0.6 digits).
LatticeDensityReport lattice_vanishing_density(const FrozenConfig& config, long n_max, LatticeMethod method,
                                               int digits = kDefaultPrecisionDigits);
/// Exact mode when every point is rational over pi, numeric otherwise.
LatticeDensityReport lattice_vanishing_density(const FrozenConfig& config, long n_max);

struct SumRuleReport {
  DensityReport f, g, product, sum;
  double product_residual = 0.0;  // |d(fg) - d(f) - d(g)|
  double product_relative = 0.0;  // divided by d(f) + d(g)
  bool sum_checked = false;
  std::string skip_reason;        // set when the sum rule was skipped
  double sum_residual = 0.0;      // |d(f+g) - max(d(f), d(g))|
  double sum_relative = 0.0;
};

SumRuleReport density_sum_rule_check(const ComplexFunction& f, const ComplexFunction& g,
                                     std::span<const double> radii, const WindingOptions& options = {});

struct TransformDensityReport {
  DensityReport exponential, cosine, sine;
  /// exp-cos, exp-sin, cos-sin.
  std::array<double, 3> differences{};
  std::array<double, 3> combined_stderr{};
  double max_relative_difference = 0.0;
  bool within_stderr = false;  // every difference within 3 combined stderr
};

/// Densities of the exponential, cosine and sine transforms of f over [0,pi].
TransformDensityReport transform_density_check(const Potential& f, std::span<const double> radii,
                                               const WindingOptions& options = {});

/// rho -> int_0^pi sin(rho (pi - t)) q(t) dt.
ComplexFunction sine_kernel_transform(const Potential& q, int base_panels = kDefaultQuadraturePanels);

struct ProportionalityReport {
  DensityReport partial, full;
  double ratio = 0.0;      // partial slope over full slope
  double predicted = 0.0;  // ratio of support hull lengths
};

/// Compares the sine-kernel transform densities of two potentials.
ProportionalityReport support_proportionality_check(const Potential& partial, const Potential& full,
                                                    std::span<const double> radii,
                                                    const WindingOptions& options = {});

/// Named test functions: cos_pi, cos_half_pi, sinc_pi, exp_indicator.
std::optional<ComplexFunction> builtin_function(const std::string& name);

}  // namespace frozenspec
