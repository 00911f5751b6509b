#include "frozenspec/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <string>

#include "frozenspec/errors.hpp"
#include "numerics.hpp"

namespace frozenspec {

namespace {

constexpr double kMaxPhasePerPanel = 2.0;
constexpr int kRecurrenceRefresh = 16;
constexpr cplx I{0.0, 1.0};

void require_finite_rho(cplx rho) {
  if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag())) throw ParameterError("non-finite rho");
  if (std::abs(rho) > kMaxQuadratureRho)
    throw ParameterError("|rho| = " + std::to_string(std::abs(rho)) + " exceeds the resolved quadrature range");
}

// sin(rho s)/rho including the removable point rho = 0.
cplx sin_over(cplx rho, double s) {
  if (std::abs(rho) < kSmallRho) return s - rho * rho * s * s * s / 6.0;
  return std::sin(rho * s) / rho;
}

}  // namespace

// ---------------------------------------------------------------- quadrature

struct KernelQuadrature::Cache {
  std::mutex mutex;
  std::vector<std::unique_ptr<const Level>> levels;  // levels[k] has 2^k times the base panels
};

KernelQuadrature::KernelQuadrature(const Potential& q, double upper, double offset, double slope, int base_panels)
    : KernelQuadrature(q, Interval{0.0, upper}, offset, slope, base_panels) {
  if (!(upper > 0.0)) throw ParameterError("integration limit must lie in (0,pi]");
}

KernelQuadrature::KernelQuadrature(const Potential& q, Interval range, double offset, double slope, int base_panels)
    : q_(std::make_shared<const Potential>(q)),
      lower_(range.lo),
      upper_(range.hi),
      offset_(offset),
      slope_(slope),
      base_(base_panels),
      cache_(std::make_shared<Cache>()) {
  if (!(range.lo >= 0.0 && range.lo <= range.hi && range.hi <= pi))
    throw ParameterError("integration range must lie in [0,pi]");
  if (base_panels < 1) throw ParameterError("quadrature needs at least one panel per pi");
  if (q.is_zero()) return;
  for (const auto& iv : q.support()) {
    const double lo = std::max(iv.lo, range.lo);
    const double hi = std::min(iv.hi, range.hi);
    if (hi > lo) pieces_.push_back({lo, hi});
  }
}

KernelQuadrature::Level KernelQuadrature::make_level(int factor) const {
  Level level;
  for (const auto& iv : pieces_) {
    Piece p;
    p.lo = iv.lo;
    p.hi = iv.hi;
    p.panels = factor * std::max(1, static_cast<int>(std::ceil(base_ * iv.length() / pi - 1e-9)));
    const double h = iv.length() / p.panels;
    p.weighted.resize(static_cast<std::size_t>(p.panels) * detail::kGaussX.size());
    for (int j = 0; j < p.panels; ++j)
      for (std::size_t k = 0; k < detail::kGaussX.size(); ++k) {
        const double t = std::min(p.hi, p.lo + (j + detail::kGaussX[k]) * h);
        p.weighted[static_cast<std::size_t>(j) * detail::kGaussX.size() + k] =
            detail::kGaussW[k] * h * q_->eval_unmasked(t);
      }
    level.push_back(std::move(p));
  }
  return level;
}

const KernelQuadrature::Level& KernelQuadrature::level_for(double rho_abs) const {
  double longest = 0.0;
  int base_count = 1;
  for (const auto& iv : pieces_)
    if (iv.length() > longest) {
      longest = iv.length();
      base_count = std::max(1, static_cast<int>(std::ceil(base_ * iv.length() / pi - 1e-9)));
    }
  const double phase = rho_abs * std::abs(slope_) * longest / base_count;
  std::size_t k = 0;
  while (phase / static_cast<double>(1u << k) > kMaxPhasePerPanel) ++k;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cache_->levels.size() <= k) cache_->levels.resize(k + 1);
  if (!cache_->levels[k]) cache_->levels[k] = std::make_unique<const Level>(make_level(1 << k));
  return *cache_->levels[k];
}

cplx KernelQuadrature::integrate(const Piece& piece, cplx rho, Kernel kernel) const {
  constexpr std::size_t nq = detail::kGaussX.size();
  const double h = (piece.hi - piece.lo) / piece.panels;
  cplx sum = 0.0;

  if (kernel == Kernel::sin_over_rho && std::abs(rho) < kSmallRho) {
    for (int j = 0; j < piece.panels; ++j)
      for (std::size_t k = 0; k < nq; ++k) {
        const double s = offset_ + slope_ * (piece.lo + (j + detail::kGaussX[k]) * h);
        sum += piece.weighted[static_cast<std::size_t>(j) * nq + k] * (s - rho * rho * s * s * s / 6.0);
      }
    return sum;
  }

  // exp(i rho s) at node (j, k) = panel factor(j) * node factor(k).
  const cplx z0 = rho * (offset_ + slope_ * piece.lo);
  const cplx dz = rho * (slope_ * h);
  std::array<cplx, nq> node_plus, node_minus;
  for (std::size_t k = 0; k < nq; ++k) {
    node_plus[k] = std::exp(I * dz * detail::kGaussX[k]);
    node_minus[k] = std::exp(-I * dz * detail::kGaussX[k]);
  }
  const cplx step_plus = std::exp(I * dz);
  const cplx step_minus = std::exp(-I * dz);
  cplx panel_plus, panel_minus;
  for (int j = 0; j < piece.panels; ++j) {
    if (j % kRecurrenceRefresh == 0) {
      const cplx z = z0 + static_cast<double>(j) * dz;
      panel_plus = std::exp(I * z);
      panel_minus = std::exp(-I * z);
    } else {
      panel_plus *= step_plus;
      panel_minus *= step_minus;
    }
    const double* w = piece.weighted.data() + static_cast<std::size_t>(j) * nq;
    switch (kernel) {
      case Kernel::sin_over_rho:
      case Kernel::sin:
        for (std::size_t k = 0; k < nq; ++k)
          sum += w[k] * (panel_plus * node_plus[k] - panel_minus * node_minus[k]);
        break;
      case Kernel::cos:
        for (std::size_t k = 0; k < nq; ++k)
          sum += w[k] * (panel_plus * node_plus[k] + panel_minus * node_minus[k]);
        break;
      case Kernel::exp_minus_i:
        for (std::size_t k = 0; k < nq; ++k) sum += w[k] * (panel_minus * node_minus[k]);
        break;
    }
  }
  switch (kernel) {
    case Kernel::sin_over_rho: return sum / (2.0 * I * rho);
    case Kernel::sin: return sum / (2.0 * I);
    case Kernel::cos: return 0.5 * sum;
    case Kernel::exp_minus_i: return sum;
  }
  return sum;
}

cplx KernelQuadrature::operator()(cplx rho, Kernel kernel) const {
  require_finite_rho(rho);
  if (pieces_.empty()) return 0.0;
  cplx total = 0.0;
  for (const auto& p : level_for(std::abs(rho))) total += integrate(p, rho, kernel);
  return total;
}

cplx kernel_integral(const Potential& q, double a, cplx rho, KernelKind kind, int base_panels) {
  if (!(a > 0.0) || a > pi) throw ParameterError("kernel endpoint must lie in (0,pi]");
  require_finite_rho(rho);
  const KernelQuadrature quad(q, a, a, -1.0, base_panels);
  return quad(rho, kind == KernelKind::sine ? Kernel::sin_over_rho : Kernel::cos);
}

cplx transform_integral(const Potential& f, cplx rho, TransformKind kind, int base_panels) {
  const KernelQuadrature quad(f, pi, 0.0, 1.0, base_panels);
  switch (kind) {
    case TransformKind::exponential:
      return quad(rho, Kernel::exp_minus_i);
    case TransformKind::cosine:
      return quad(rho, Kernel::cos);
    case TransformKind::sine:
      return quad(rho, Kernel::sin);
  }
  return 0.0;
}

// ---------------------------------------------------------------- determinant

cplx determinant(std::vector<std::vector<cplx>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ParameterError("determinant of a non-square matrix");
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == cplx(0.0)) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx factor = m[r][col] / m[col][col];
      if (factor == cplx(0.0)) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

// ---------------------------------------------------------------- CharFun

cplx first_column_entry(int alpha, double a, cplx rho) {
  return alpha == 0 ? sin_over(rho, a) : std::cos(rho * a);
}

cplx last_row_entry(int alpha, int beta, cplx rho) {
  if (alpha == 0 && beta == 0) return sin_over(rho, pi);
  if (alpha == 1 && beta == 1) return -rho * std::sin(rho * pi);
  return std::cos(rho * pi);
}

CharFun::CharFun(FrozenConfig config, Potential potential, EvalPath path, int quadrature_panels)
    : config_(std::move(config)), potential_(std::move(potential)), path_(path), panels_(quadrature_panels) {
  if (quadrature_panels < 1) throw ParameterError("quadrature needs at least one panel per pi");
  point_kernels_.reserve(config_.size());
  for (double a : config_.points()) point_kernels_.emplace_back(potential_, a, a, -1.0, panels_);
  pi_kernel_.emplace(potential_, pi, pi, -1.0, panels_);
  for (double a : config_.points()) {
    left_kernels_.emplace_back(potential_, Interval{0.0, a}, 0.0, 1.0, panels_);
    right_kernels_.emplace_back(potential_, Interval{a, pi}, pi, -1.0, panels_);
  }

  // The sign is q-independent; calibrate it on q = 0, where the closed form is u_pi.
  const cplx ref{1.0, 1.0};
  Entries e;
  for (double a : config_.points()) {
    e.u.push_back(first_column_entry(config_.alpha(), a, ref));
    e.w.push_back(0.0);
  }
  e.u_pi = last_row_entry(config_.alpha(), config_.beta(), ref);
  e.w_pi = 0.0;
  const cplx closed = e.u_pi;
  const cplx ratio = determinant(assemble(e)) / closed;
  if (std::abs(std::abs(ratio) - 1.0) > 1e-12) throw NumericError("closed form calibration failed");
  sign_ = ratio.real() > 0.0 ? 1 : -1;
}

void CharFun::check_rho(cplx rho) const { require_finite_rho(rho); }

CharFun::Entries CharFun::entries(cplx rho) const {
  check_rho(rho);
  Entries e;
  e.u.reserve(config_.size());
  e.w.reserve(config_.size());
  for (std::size_t i = 0; i < config_.size(); ++i) {
    e.u.push_back(first_column_entry(config_.alpha(), config_.points()[i], rho));
    e.w.push_back(point_kernels_[i](rho, Kernel::sin_over_rho));
  }
  e.u_pi = last_row_entry(config_.alpha(), config_.beta(), rho);
  e.w_pi = (*pi_kernel_)(rho, config_.beta() == 0 ? Kernel::sin_over_rho : Kernel::cos);
  return e;
}

std::vector<std::vector<cplx>> CharFun::assemble(const Entries& e) {
  const std::size_t n = e.u.size();
  std::vector<std::vector<cplx>> m(n + 1, std::vector<cplx>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][0] = e.u[i];
    m[i][1] = e.w[i];
  }
  m[0][1] -= 1.0;
  for (std::size_t c = 2; c <= n; ++c) m[0][c] = 1.0;
  for (std::size_t i = 1; i < n; ++i) m[i][i + 1] = -1.0;
  m[n][0] = e.u_pi;
  m[n][1] = e.w_pi;
  return m;
}

std::vector<std::vector<cplx>> CharFun::matrix(cplx rho) const { return assemble(entries(rho)); }

bool CharFun::exact_determinant() const { return potential_.grid_samples().empty(); }

cplx CharFun::eval_det(cplx rho) const {
  check_rho(rho);
  if (exact_determinant() && std::abs(rho) >= kSmallRho)
    return exact_sine_determinant(potential_, config_, rho, exact_determinant_digits(config_, rho));
  auto m = matrix(rho);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c)
      if (!std::isfinite(m[r][c].real()) || !std::isfinite(m[r][c].imag()))
        throw NumericError("non-finite determinant entry at row " + std::to_string(r + 1) + ", column " +
                           std::to_string(c + 1));
  return determinant(std::move(m));
}

cplx CharFun::closed_linear_part(cplx rho) const {
  check_rho(rho);
  const Kernel left = config_.alpha() == 0 ? Kernel::sin_over_rho : Kernel::cos;
  const Kernel right = config_.beta() == 0 ? Kernel::sin_over_rho : Kernel::cos;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < config_.size(); ++i) {
    const double a = config_.points()[i];
    sum += first_column_entry(config_.beta(), pi - a, rho) * left_kernels_[i](rho, left) +
           first_column_entry(config_.alpha(), a, rho) * right_kernels_[i](rho, right);
  }
  return sum;
}

cplx CharFun::eval_closed(cplx rho) const {
  const cplx value =
      static_cast<double>(sign_) * (closed_linear_part(rho) + last_row_entry(config_.alpha(), config_.beta(), rho));
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NumericError("non-finite characteristic function value");
  return value;
}

cplx CharFun::operator()(cplx rho) const { return path_ == EvalPath::determinant ? eval_det(rho) : eval_closed(rho); }

cplx charfun_eval_det(const CharFun& cf, cplx rho) { return cf.eval_det(rho); }
cplx charfun_eval_closed(const CharFun& cf, cplx rho) { return cf.eval_closed(rho); }

std::vector<cplx> charfun_grid(const CharFun& cf, std::span<const cplx> rho_samples) {
  std::vector<cplx> out(rho_samples.size());
  std::vector<std::optional<Error>> errors(rho_samples.size());
  detail::parallel_for(rho_samples.size(), [&](std::size_t i) {
    try {
      out[i] = cf(rho_samples[i]);
    } catch (const Error& e) {
      errors[i] = e;
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (errors[i]) throw Error(errors[i]->code(), "sample " + std::to_string(i) + ": " + errors[i]->what());
  return out;
}

}  // namespace frozenspec
