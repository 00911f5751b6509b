#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "frozenspec/model.hpp"

namespace frozenspec {

/// Largest |rho| the oscillatory quadrature accepts.
inline constexpr double kMaxQuadratureRho = 500.0;
/// Below this |rho| the sin(rho s)/rho kernel switches to its Taylor limit.
inline constexpr double kSmallRho = 1e-6;

enum class KernelKind { sine, cosine };

enum class TransformKind { exponential, cosine, sine };

enum class EvalPath { determinant, closed_form };

/// Kernel evaluated at z = rho * s.
enum class Kernel {
  sin_over_rho,  // sin(z) / rho, with the rho -> 0 limit s - rho^2 s^3 / 6
  sin,           // sin(z)
  cos,           // cos(z)
  exp_minus_i,   // exp(-i z)
};

/// Gauss-Legendre panels per pi of integration length before any refinement.
inline constexpr int kDefaultQuadraturePanels = 32;

// Composite 8-point Gauss-Legendre quadrature of q(t) * kernel(rho * (offset + slope * t))
// over [lower, upper] intersected with the support of q. Panels are refined by
// doubling until rho * slope * width <= 2 on every panel; potential values at
// the nodes of each refinement level are sampled once and cached. The
// trigonometric factors are generated per rho by a multiplicative recurrence.
class KernelQuadrature {
 public:
  KernelQuadrature(const Potential& q, double upper, double offset, double slope,
                   int base_panels = kDefaultQuadraturePanels);
  KernelQuadrature(const Potential& q, Interval range, double offset, double slope,
                   int base_panels = kDefaultQuadraturePanels);

  cplx operator()(cplx rho, Kernel kernel) const;

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    int panels = 0;
    std::vector<double> weighted;  // Gauss weight * width * q(t), 8 per panel
  };
  using Level = std::vector<Piece>;
  struct Cache;

  const Level& level_for(double rho_abs) const;
  Level make_level(int factor) const;
  cplx integrate(const Piece& piece, cplx rho, Kernel kernel) const;

  std::shared_ptr<const Potential> q_;
  double lower_;
  double upper_;
  double offset_;
  double slope_;
  int base_;
  std::vector<Interval> pieces_;
  std::shared_ptr<Cache> cache_;
};

/// int_0^a q(t) sin(rho (a - t)) / rho dt (sine) or int_0^a q(t) cos(rho (a - t)) dt (cosine).
cplx kernel_integral(const Potential& q, double a, cplx rho, KernelKind kind,
                     int base_panels = kDefaultQuadraturePanels);

/// int_0^pi e^{-i rho x} f(x) dx, int_0^pi cos(rho x) f(x) dx or int_0^pi sin(rho x) f(x) dx.
cplx transform_integral(const Potential& f, cplx rho, TransformKind kind,
                        int base_panels = kDefaultQuadraturePanels);

/// Determinant by Gaussian elimination with partial pivoting.
cplx determinant(std::vector<std::vector<cplx>> m);

// Characteristic function Delta_N^{(alpha,beta)} of the frozen-argument problem,
// an even entire function of rho. Immutable; evaluation is const and pure.
class CharFun {
 public:
  struct Entries {
    std::vector<cplx> u;  // first column, rows a_1..a_N
    std::vector<cplx> w;  // kernel integrals, rows a_1..a_N
    cplx u_pi;
    cplx w_pi;
  };

  CharFun(FrozenConfig config, Potential potential, EvalPath path = EvalPath::closed_form,
          int quadrature_panels = kDefaultQuadraturePanels);

  /// Evaluates along the configured path.
  cplx operator()(cplx rho) const;
  /// The literal determinant. For sine-series potentials the entries are exact
  /// trigonometric integrals and the elimination runs in multiprecision, with
  /// enough digits to absorb the exp(|Im rho| a_N) cancellation.
  cplx eval_det(cplx rho) const;
  /// Expanded determinant, regrouped so that no term exceeds exp(|Im rho| pi):
  ///   sum_i [d(pi - a_i) int_0^{a_i} q c + c(a_i) int_{a_i}^pi q d(pi - t)] + u_pi,
  /// c = sin(rho t)/rho or cos(rho t) by alpha, d likewise by beta.
  cplx eval_closed(cplx rho) const;
  /// The closed form minus its q-independent term u_pi; linear in q.
  cplx closed_linear_part(cplx rho) const;
  /// Whether eval_det uses the multiprecision path.
  bool exact_determinant() const;

  Entries entries(cplx rho) const;
  /// The literal (N+1)x(N+1) matrix.
  std::vector<std::vector<cplx>> matrix(cplx rho) const;
  /// Global sign relating the closed form to the determinant, fixed at rho = 1 + i.
  int sign() const { return sign_; }

  const FrozenConfig& config() const { return config_; }
  const Potential& potential() const { return potential_; }
  EvalPath path() const { return path_; }
  int quadrature_panels() const { return panels_; }

 private:
  static std::vector<std::vector<cplx>> assemble(const Entries& e);
  void check_rho(cplx rho) const;

  FrozenConfig config_;
  Potential potential_;
  EvalPath path_;
  int panels_;
  std::vector<KernelQuadrature> point_kernels_;
  std::optional<KernelQuadrature> pi_kernel_;
  std::vector<KernelQuadrature> left_kernels_;   // [0, a_i], kernel c(t)
  std::vector<KernelQuadrature> right_kernels_;  // [a_i, pi], kernel d(pi - t)
  int sign_ = 1;
};

cplx charfun_eval_det(const CharFun& cf, cplx rho);
cplx charfun_eval_closed(const CharFun& cf, cplx rho);

/// Evaluates at every sample (possibly concurrently); results are ordered by
/// input index and identical to per-point calls.
std::vector<cplx> charfun_grid(const CharFun& cf, std::span<const cplx> rho_samples);

/// "first column" entry sin(rho a)/rho or cos(rho a).
cplx first_column_entry(int alpha, double a, cplx rho);
/// Last-row first entry u_pi for the boundary pair.
cplx last_row_entry(int alpha, int beta, cplx rho);

/// Determinant of the literal matrix in multiprecision for a sine-series
/// potential; `digits` decimal digits.
cplx exact_sine_determinant(const Potential& q, const FrozenConfig& config, cplx rho, unsigned digits);
/// The working precision eval_det picks at rho.
unsigned exact_determinant_digits(const FrozenConfig& config, cplx rho);

}  // namespace frozenspec
