#include "frozenspec/inverse_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include <Eigen/Dense>

#include "frozenspec/errors.hpp"
#include "numerics.hpp"

namespace frozenspec {

// ---------------------------------------------------------------- identity

cplx identity_residual(const Potential& qhat, const FrozenConfig& config, cplx rho, int base_panels) {
  const CharFun linear(config, qhat, EvalPath::closed_form, base_panels);
  return rho * linear.closed_linear_part(rho);
}

cplx identity_residual_difference_check(const Potential& q1, const Potential& q2, const FrozenConfig& config,
                                        cplx rho, int base_panels) {
  const CharFun d1(config, q1, EvalPath::closed_form, base_panels);
  const CharFun d2(config, q2, EvalPath::closed_form, base_panels);
  const Potential qhat = linear_combination(1.0, q1, -1.0, q2);
  return rho * (d1(rho) - d2(rho)) - static_cast<double>(d1.sign()) * identity_residual(qhat, config, rho, base_panels);
}

// ---------------------------------------------------------------- spectrum

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  }
  void num(double v) { bytes(&v, sizeof v); }
  void num(std::int64_t v) { bytes(&v, sizeof v); }
};

bool lambda_less(const Eigenvalue& a, const Eigenvalue& b) {
  const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
  if (std::abs(ma - mb) > 1e-9 * (1.0 + std::max(ma, mb))) return ma < mb;
  return std::arg(a.lambda) < std::arg(b.lambda);
}

constexpr double kOriginTolerance = 1e-5;

}  // namespace

std::string config_hash(const Potential& q, const FrozenConfig& config) {
  Fnv f;
  for (double c : q.sine_coeffs()) f.num(c);
  f.num(std::int64_t{-1});
  for (const auto& s : q.grid_samples()) {
    f.num(s.x);
    f.num(s.value);
  }
  f.num(std::int64_t{-2});
  for (const auto& iv : q.support()) {
    f.num(iv.lo);
    f.num(iv.hi);
  }
  f.num(std::int64_t{-3});
  for (double a : config.points()) f.num(a);
  f.num(std::int64_t{config.alpha()});
  f.num(std::int64_t{config.beta()});
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
  return buf;
}

Spectrum compute_spectrum(const Potential& q, const FrozenConfig& config, const Region& region,
                          const LocateOptions& options) {
  const CharFun cf(config, q);
  const ComplexFunction f = [&cf](cplx z) { return cf(z); };

  Region used = region;
  std::optional<ZeroList> zl;
  for (int attempt = 0; attempt < 8 && !zl; ++attempt) {
    try {
      zl = locate_zeros(f, used, 1e-6, options);
    } catch (const ContourThroughZeroError&) {
      if (used.kind() != Region::Kind::disk) throw;
      used = Region::disk(region.center(), region.radius() * (1.0 - 5e-3 * (attempt + 1)));
    } catch (const UnreliableCountError&) {
      if (used.kind() != Region::Kind::disk) throw;
      used = Region::disk(region.center(), region.radius() * (1.0 - 5e-3 * (attempt + 1)));
    }
  }
  if (!zl) throw UnreliableCountError("no reliable contour near " + region.describe(), region.outer_radius());

  Spectrum s;
  s.search_region = used;
  s.config_hash = config_hash(q, config);
  s.rho_zero_count = zl->region_count;
  s.located_multiplicity = zl->total_multiplicity();
  s.flagged = zl->flagged;

  const auto& zs = zl->zeros;
  std::vector<bool> used_zero(zs.size(), false);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used_zero[i]) continue;
    used_zero[i] = true;
    const cplx z = zs[i].location;
    if (std::abs(z) < kOriginTolerance) {
      s.eigenvalues.push_back({0.0, (zs[i].multiplicity + 1) / 2, zs[i].residual, 0.0});
      continue;
    }
    cplx rep = z;
    int mult = zs[i].multiplicity;
    double residual = zs[i].residual;
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      if (used_zero[j] || std::abs(zs[j].location + z) > 1e-6 * (1.0 + std::abs(z))) continue;
      used_zero[j] = true;
      mult = std::max(mult, zs[j].multiplicity);
      if (zs[j].location.real() > rep.real() ||
          (zs[j].location.real() == rep.real() && zs[j].location.imag() > rep.imag())) {
        rep = zs[j].location;
        residual = zs[j].residual;
      }
      break;
    }
    if (rep.real() < 0.0 || (rep.real() == 0.0 && rep.imag() < 0.0)) rep = -rep;
    s.eigenvalues.push_back({rep * rep, mult, residual, rep});
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), lambda_less);
  return s;
}

// ---------------------------------------------------------------- isospectral search

const char* init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::automatic: return "automatic";
    case InitKind::witness: return "witness";
    case InitKind::random: return "random";
    case InitKind::zero: return "zero";
  }
  return "unknown";
}

std::vector<cplx> default_sample_rhos() {
  std::vector<cplx> s;
  for (int k = 1; k <= 200; ++k) s.emplace_back(0.2 * k, 0.0);
  for (int k = 0; k < 40; ++k) {
    const double theta = 2.0 * pi * (k + 0.5) / 40.0;
    s.push_back(10.0 * cplx(std::cos(theta), std::sin(theta)));
  }
  return s;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class Objective {
 public:
  Objective(const Potential& q1, const FrozenConfig& config, std::vector<cplx> samples)
      : q1_(q1), config_(config), samples_(std::move(samples)) {
    const CharFun base(config_, q1_);
    base_.resize(samples_.size());
    weight_.resize(samples_.size());
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      base_[k] = base(samples_[k]);
      weight_[k] = 1.0 / std::cosh(pi * samples_[k].imag());
    }
  }

  Potential potential(const VectorXd& c) const {
    return Potential::from_sine(std::vector<double>(c.data(), c.data() + c.size()), "qhat");
  }

  VectorXd residual(const VectorXd& c) const {
    const Potential q2 = linear_combination(1.0, q1_, 1.0, potential(c));
    const CharFun cf(config_, q2);
    VectorXd r(2 * static_cast<Eigen::Index>(samples_.size()));
    detail::parallel_for(samples_.size(), [&](std::size_t k) {
      const cplx d = (cf(samples_[k]) - base_[k]) * weight_[k];
      r[2 * static_cast<Eigen::Index>(k)] = d.real();
      r[2 * static_cast<Eigen::Index>(k) + 1] = d.imag();
    }, 16);
    return r;
  }

  double value(const VectorXd& c) const { return residual(c).squaredNorm(); }

  // Forward differences; the residual is affine in c, so any step is exact up to rounding.
  MatrixXd jacobian(Eigen::Index modes, double step) const {
    const VectorXd zero = VectorXd::Zero(modes);
    const VectorXd r0 = residual(zero);
    MatrixXd jac(r0.size(), modes);
    for (Eigen::Index j = 0; j < modes; ++j) {
      VectorXd e = zero;
      e[j] = step;
      jac.col(j) = (residual(e) - r0) / step;
    }
    return jac;
  }

 private:
  const Potential& q1_;
  const FrozenConfig& config_;
  std::vector<cplx> samples_;
  std::vector<cplx> base_;
  std::vector<double> weight_;
};

struct StartResult {
  VectorXd c;
  double objective = 0.0;
  int iterations = 0;
};

// Damped Gauss-Newton on the sphere |c| = radius: least squares in the tangent
// space of c, then retraction. Steps that increase the objective are rejected.
StartResult gauss_newton(const Objective& obj, const MatrixXd& jac, VectorXd c, double radius, int max_iterations,
                         int start, std::vector<IterationRecord>& log) {
  const Eigen::Index m = c.size();
  StartResult out;
  double f = obj.value(c);
  log.push_back({start, 0, f, 0.0});
  double mu = 1e-10 * jac.squaredNorm() / static_cast<double>(m);
  for (int it = 1; it <= max_iterations && m > 1; ++it) {
    const VectorXd r = obj.residual(c);
    Eigen::HouseholderQR<MatrixXd> qr(c.normalized());
    const MatrixXd q = qr.householderQ() * MatrixXd::Identity(m, m);
    const MatrixXd tangent = q.rightCols(m - 1);
    const MatrixXd a = jac * tangent;
    bool accepted = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      MatrixXd stacked(a.rows() + a.cols(), a.cols());
      stacked << a, std::sqrt(mu) * MatrixXd::Identity(a.cols(), a.cols());
      VectorXd rhs = VectorXd::Zero(stacked.rows());
      rhs.head(r.size()) = -r;
      const VectorXd y = stacked.colPivHouseholderQr().solve(rhs);
      VectorXd next = c + tangent * y;
      next *= radius / next.norm();
      const double fn = obj.value(next);
      if (fn <= f) {
        const double gain = f - fn;
        c = next;
        f = fn;
        mu = std::max(mu / 3.0, 1e-300);
        accepted = true;
        out.iterations = it;
        log.push_back({start, it, f, mu});
        if (gain <= 1e-9 * f || f == 0.0) it = max_iterations;
        break;
      }
      mu = std::max(mu, 1e-300) * 10.0;
    }
    if (!accepted) break;
  }
  out.c = c;
  out.objective = f;
  return out;
}

}  // namespace

IsospectralResult isospectral_search(const Potential& q1, const FrozenConfig& config, const IsospectralOptions& opt) {
  if (opt.mode_budget < 1) throw ParameterError("mode_budget must be at least 1");
  if (!(opt.tol >= 0.0) || !(opt.norm_floor >= 0.0)) throw ParameterError("tol and norm floor must be non-negative");
  if (opt.restarts < 0 || opt.max_iterations < 0) throw ParameterError("restart and iteration budgets must be non-negative");

  IsospectralResult res;
  res.seed = opt.seed;
  const Eigen::Index m = opt.mode_budget;
  // Coefficient radius giving ||q^||_2 = norm_floor (slightly above, against rounding).
  const double radius = opt.norm_floor * (1.0 + 1e-12) / std::sqrt(0.5 * pi);

  const auto lattice = lattice_vanishing_density(config, 600);
  res.lattice_density = lattice.vanishing_fraction;
  std::optional<long> n0;
  for (const auto& s : lattice.samples)
    if (s.is_zero && s.n >= 1) {
      n0 = s.n;
      break;
    }

  const Objective obj(q1, config, opt.sample_rhos.empty() ? default_sample_rhos() : opt.sample_rhos);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_start = [&] {
    VectorXd c(m);
    for (Eigen::Index j = 0; j < m; ++j) c[j] = normal(rng);
    return VectorXd(c * (radius / c.norm()));
  };

  InitKind init = opt.init;
  if (init == InitKind::automatic) init = res.lattice_density > 0.0 && n0 ? InitKind::witness : InitKind::random;
  if (init == InitKind::witness && !n0) throw ParameterError("no lattice point with vanishing cosine sum for a witness start");

  std::vector<VectorXd> starts;
  if (init == InitKind::zero || radius == 0.0) {
    if (radius > 0.0) throw ParameterError("zero initialization needs norm floor 0");
    starts.push_back(VectorXd::Zero(m));
    res.init = "zero";
  } else {
    if (init == InitKind::witness) {
      res.witness_n0 = n0;
      const Potential w = project_sine(witness_qhat(static_cast<int>(*n0)), opt.mode_budget);
      VectorXd c = Eigen::Map<const VectorXd>(w.sine_coeffs().data(), m);
      starts.push_back(c.norm() > 0.0 ? VectorXd(c * (radius / c.norm())) : random_start());
      res.init = "witness";
    } else {
      starts.push_back(random_start());
      res.init = "random";
    }
    for (int k = 0; k < opt.restarts; ++k) starts.push_back(random_start());
  }

  std::optional<StartResult> best;
  if (radius == 0.0) {
    best = StartResult{starts.front(), obj.value(starts.front()), 0};
    res.log.push_back({0, 0, best->objective, 0.0});
    res.initial_objectives.push_back(best->objective);
  } else {
    const MatrixXd jac = obj.jacobian(m, radius);
    for (std::size_t s = 0; s < starts.size(); ++s) {
      res.initial_objectives.push_back(obj.value(starts[s]));
      StartResult r = gauss_newton(obj, jac, starts[s], radius, opt.max_iterations, static_cast<int>(s), res.log);
      res.iterations += r.iterations;
      if (!best || r.objective < best->objective) {
        best = std::move(r);
        res.best_start = static_cast<int>(s);
      }
    }
  }
  res.starts = static_cast<int>(starts.size());
  res.qhat = obj.potential(best->c);
  res.objective = best->objective;
  res.qhat_norm = std::sqrt(l2_norm_squared(res.qhat));
  res.converged = res.objective < opt.tol || res.objective == 0.0;

  if (opt.verify) {
    const Region region = Region::disk(0.0, opt.verify_radius);
    const Spectrum s1 = compute_spectrum(q1, config, region);
    const Spectrum s2 = compute_spectrum(linear_combination(1.0, q1, 1.0, res.qhat), config, region);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opt.verify_count),
                                                std::min(s1.eigenvalues.size(), s2.eigenvalues.size()));
    for (std::size_t i = 0; i < k; ++i) {
      res.eigen_q1.push_back(s1.eigenvalues[i].lambda);
      res.eigen_q2.push_back(s2.eigenvalues[i].lambda);
      res.spectra_match.push_back(std::abs(s1.eigenvalues[i].lambda - s2.eigenvalues[i].lambda));
    }
    res.spectra_verified = k == static_cast<std::size_t>(opt.verify_count) && s1.complete() && s2.complete() &&
                           std::all_of(res.spectra_match.begin(), res.spectra_match.end(),
                                       [](double d) { return d <= 1e-6; });
  }
  return res;
}

// ---------------------------------------------------------------- part 3

Part3Report part3_experiment(const Potential& q, const std::optional<SupportWindow>& window,
                             const FrozenConfig& config, std::span<const double> radii,
                             const WindingOptions& options) {
  Part3Report rep;
  if (window) {
    window->validate_for(config);
    rep.qhat = window_restrict(q, *window);
  } else {
    rep.qhat = q;
  }
  if (rep.qhat.is_zero()) throw ParameterError("part-3 experiment needs a nonzero q^");

  std::vector<std::shared_ptr<const KernelQuadrature>> at_points;
  for (double a : config.points()) at_points.push_back(std::make_shared<KernelQuadrature>(rep.qhat, a, a, -1.0));
  const std::vector<double> pts = config.points();

  rep.sine_transform = density_estimate(sine_kernel_transform(rep.qhat), radii, false, options);
  rep.cosine_sum = density_estimate([pts](cplx z) { return cosine_sum(pts, z); }, radii, false, options);
  rep.cos_pi = density_estimate([](cplx z) { return std::cos(pi * z); }, radii, false, options);
  rep.kernel_sum = density_estimate(
      [at_points](cplx z) {
        cplx s = 0.0;
        for (const auto& k : at_points) s += (*k)(z, Kernel::sin);
        return s;
      },
      radii, false, options);

  rep.lhs = rep.sine_transform.full_disk_slope + rep.cosine_sum.full_disk_slope;
  rep.lhs_stderr = std::hypot(rep.sine_transform.full_disk_stderr, rep.cosine_sum.full_disk_stderr);
  rep.rhs = rep.cos_pi.full_disk_slope + rep.kernel_sum.full_disk_slope;
  rep.rhs_stderr = std::hypot(rep.cos_pi.full_disk_stderr, rep.kernel_sum.full_disk_stderr);
  rep.kernel_sum_bound = 2.0 * config.last_point() / pi;
  rep.margin = rep.kernel_sum_bound - rep.kernel_sum.full_disk_slope;
  rep.rhs_bound = 2.0 + rep.kernel_sum_bound;
  rep.consistent = rep.kernel_sum.full_disk_slope < rep.kernel_sum_bound + 3.0 * rep.kernel_sum.full_disk_stderr;
  rep.lhs_half = 0.5 * rep.lhs;
  rep.rhs_half = 0.5 * rep.rhs;
  rep.margin_half = 0.5 * rep.margin;
  rep.rhs_bound_half = 0.5 * rep.rhs_bound;
  return rep;
}

}  // namespace frozenspec
