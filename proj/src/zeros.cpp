#include "frozenspec/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "frozenspec/errors.hpp"
#include "numerics.hpp"

namespace frozenspec {

namespace {

constexpr double kMaxResidual = 0.25;

using detail::kGaussW;
using detail::kGaussX;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// f'(z)/f(z) with the contour-through-zero guard.
cplx log_derivative(const ComplexFunction& f, cplx z, const WindingOptions& opt) {
  const cplx fz = f(z);
  if (!finite(fz)) throw NumericError("non-finite function value on contour at " + fmt(z.real()) + "+" + fmt(z.imag()) + "i");
  const cplx d = fd_derivative(f, z);
  if (!finite(d)) throw NumericError("non-finite derivative on contour");
  if (fz == cplx(0.0) || std::abs(fz) <= opt.floor * (1.0 + std::abs(z)) * std::abs(d))
    throw ContourThroughZeroError("contour passes through a zero near " + fmt(z.real()) + "+" + fmt(z.imag()) +
                                  "i; perturb the contour");
  return d / fz;
}

double residual_of(cplx integral) {
  return std::abs(integral - cplx(std::round(integral.real()), 0.0));
}

CountingReport finish(cplx integral, int nodes, double radius, bool converged, const WindingOptions&) {
  CountingReport rep;
  rep.radius = radius;
  rep.raw_integral = integral;
  rep.count = std::lround(integral.real());
  rep.contour_nodes = nodes;
  rep.max_residual = residual_of(integral);
  if (!converged || rep.max_residual >= kMaxResidual)
    throw UnreliableCountError("winding integral " + fmt(integral.real()) + "+" + fmt(integral.imag()) +
                                   "i did not settle on an integer (radius " + fmt(radius) + ")",
                               radius);
  return rep;
}

// Trapezoidal rule on a circle; each doubling reuses the previous nodes.
CountingReport circle_winding(const ComplexFunction& f, cplx center, double r, int nodes, const WindingOptions& opt) {
  int m = std::max(nodes, 8);
  auto node = [&](std::size_t k, std::size_t total) {
    const double theta = 2.0 * pi * static_cast<double>(k) / static_cast<double>(total);
    const cplx offset = r * cplx(std::cos(theta), std::sin(theta));
    return log_derivative(f, center + offset, opt) * offset;
  };
  std::vector<cplx> g(static_cast<std::size_t>(m));
  detail::parallel_for(g.size(), [&](std::size_t k) { g[k] = node(k, g.size()); }, 64);
  cplx sum = 0.0;
  for (const auto& v : g) sum += v;
  cplx integral = sum / static_cast<double>(m);

  while (true) {
    const int m2 = 2 * m;
    std::vector<cplx> fresh(static_cast<std::size_t>(m));
    detail::parallel_for(fresh.size(), [&](std::size_t k) { fresh[k] = node(2 * k + 1, static_cast<std::size_t>(m2)); }, 64);
    for (const auto& v : fresh) sum += v;
    const cplx refined = sum / static_cast<double>(m2);
    const bool settled = std::abs(refined - integral) < opt.convergence && residual_of(refined) < kMaxResidual;
    integral = refined;
    m = m2;
    if (settled) return finish(integral, m, r, true, opt);
    if (m >= opt.max_nodes) return finish(integral, m, r, false, opt);
  }
}

// Composite Gauss-Legendre on the four edges; panels double until stable.
CountingReport rectangle_winding(const ComplexFunction& f, cplx ll, cplx ur, int nodes, const WindingOptions& opt) {
  const std::array<cplx, 5> corner = {ll, cplx(ur.real(), ll.imag()), ur, cplx(ll.real(), ur.imag()), ll};
  auto integrate = [&](int panels) {
    const std::size_t per_edge = static_cast<std::size_t>(panels) * kGaussX.size();
    std::vector<cplx> g(4 * per_edge);
    detail::parallel_for(g.size(), [&](std::size_t idx) {
      const std::size_t edge = idx / per_edge;
      const std::size_t rem = idx % per_edge;
      const std::size_t panel = rem / kGaussX.size();
      const std::size_t q = rem % kGaussX.size();
      const cplx a = corner[edge];
      const cplx span = corner[edge + 1] - a;
      const double t = (static_cast<double>(panel) + kGaussX[q]) / panels;
      g[idx] = log_derivative(f, a + t * span, opt) * span * (kGaussW[q] / panels);
    }, 64);
    cplx s = 0.0;
    for (const auto& v : g) s += v;
    return s / cplx(0.0, 2.0 * pi);
  };
  int panels = std::max(1, nodes / 32);
  cplx integral = integrate(panels);
  const double radius = 0.5 * std::abs(ur - ll);
  while (true) {
    panels *= 2;
    const cplx refined = integrate(panels);
    const bool settled = std::abs(refined - integral) < opt.convergence && residual_of(refined) < kMaxResidual;
    integral = refined;
    const int used = 32 * panels;
    if (settled) return finish(integral, used, radius, true, opt);
    if (used >= opt.max_nodes) return finish(integral, used, radius, false, opt);
  }
}

Region box_of(cplx ll, cplx ur) { return Region::rectangle(ll, ur); }

double box_size(const Region& b) {
  const cplx d = b.upper_right() - b.lower_left();
  return std::max(d.real(), d.imag());
}

}  // namespace

cplx fd_derivative(const ComplexFunction& f, cplx z) {
  const double h = 1e-6 * (1.0 + std::abs(z));
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

CountingReport winding_count(const ComplexFunction& f, const Region& region, int nodes, const WindingOptions& options) {
  if (nodes < 8) throw ParameterError("winding_count needs at least 8 nodes");
  switch (region.kind()) {
    case Region::Kind::disk:
      return circle_winding(f, region.center(), region.radius(), nodes, options);
    case Region::Kind::annulus: {
      const auto outer = circle_winding(f, region.center(), region.outer_radius(), nodes, options);
      const auto inner = circle_winding(f, region.center(), region.inner_radius(), nodes, options);
      CountingReport rep = outer;
      rep.count = outer.count - inner.count;
      rep.raw_integral = outer.raw_integral - inner.raw_integral;
      rep.contour_nodes = outer.contour_nodes + inner.contour_nodes;
      rep.max_residual = std::max(outer.max_residual, inner.max_residual);
      return rep;
    }
    case Region::Kind::rectangle:
      return rectangle_winding(f, region.lower_left(), region.upper_right(), nodes, options);
  }
  throw ParameterError("unknown region kind");
}

// ---------------------------------------------------------------- Newton

NewtonResult newton_polish(const ComplexFunction& f, cplx start, int multiplicity, int max_iterations) {
  NewtonResult r;
  r.z = start;
  for (int it = 1; it <= max_iterations; ++it) {
    const cplx fz = f(r.z);
    r.iterations = it;
    if (fz == cplx(0.0)) {
      r.converged = true;
      return r;
    }
    const cplx d = fd_derivative(f, r.z);
    if (!finite(fz) || !finite(d) || d == cplx(0.0)) return r;
    const cplx step = static_cast<double>(multiplicity) * fz / d;
    if (!finite(step)) return r;
    r.z -= step;
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(r.z))) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------- localization

long ZeroList::total_multiplicity() const {
  long s = 0;
  for (const auto& z : zeros) s += z.multiplicity;
  return s;
}

namespace {

struct Locator {
  const ComplexFunction& f;
  double tol;
  const LocateOptions& opt;
  ZeroList out;

  std::optional<long> count(const Region& box) const {
    try {
      return winding_count(f, box, 32, opt.winding).count;
    } catch (const ContourThroughZeroError&) {
      return std::nullopt;
    } catch (const UnreliableCountError&) {
      return std::nullopt;
    }
  }

  double local_scale(const Region& box) const {
    const cplx ll = box.lower_left(), ur = box.upper_right();
    double s = 0.0;
    for (cplx c : {ll, ur, cplx(ll.real(), ur.imag()), cplx(ur.real(), ll.imag())}) {
      const cplx v = f(c);
      if (finite(v)) s = std::max(s, std::abs(v));
    }
    return s;
  }

  bool inside(const Region& box, cplx z) const {
    const cplx pad = 1e-9 * (1.0 + std::abs(box.center())) * cplx(1.0, 1.0);
    return Region::rectangle(box.lower_left() - pad, box.upper_right() + pad).contains(z);
  }

  // Returns true when the box was resolved into a zero.
  bool try_polish(const Region& box, long m) {
    const NewtonResult nr = newton_polish(f, box.center(), static_cast<int>(m), opt.newton_iterations);
    if (!nr.converged || !inside(box, nr.z)) return false;
    if (m > 1) {
      // A converged modified-Newton iterate is a genuine m-fold zero only if a
      // tiny box around it still winds m times.
      const double s = std::max(0.25 * tol, 1e-7 * (1.0 + std::abs(nr.z)));
      const auto c = count(Region::rectangle(nr.z - cplx(s, s) * 1.0137, nr.z + cplx(s, s)));
      if (!c || *c != m) return false;
    }
    const double residual = std::abs(f(nr.z));
    if (!(residual <= opt.residual_factor * (1.0 + local_scale(box)))) return false;
    out.zeros.push_back({nr.z, static_cast<int>(m), residual, true});
    return true;
  }

  void flag(const Region& box, long m, const std::string& reason) {
    out.flagged.push_back({box, m, reason});
    out.zeros.push_back({box.center(), static_cast<int>(m), std::abs(f(box.center())), false});
  }

  void process(const Region& box, long m, int depth) {
    if (m <= 0) return;
    const double size = box_size(box);
    if ((m == 1 || size < 64.0 * tol || depth > 8) && try_polish(box, m)) return;
    if (size < tol || depth >= opt.max_depth) {
      flag(box, m, "subdivision limit reached");
      return;
    }
    static constexpr std::array<double, 5> kSplits = {0.5371, 0.4629, 0.5813, 0.4187, 0.6229};
    const cplx ll = box.lower_left(), ur = box.upper_right();
    for (double frac : kSplits) {
      const double xm = ll.real() + frac * (ur.real() - ll.real());
      const double ym = ll.imag() + (1.0 - frac) * (ur.imag() - ll.imag());
      const std::array<Region, 4> kids = {box_of(ll, cplx(xm, ym)), box_of(cplx(xm, ll.imag()), cplx(ur.real(), ym)),
                                          box_of(cplx(ll.real(), ym), cplx(xm, ur.imag())), box_of(cplx(xm, ym), ur)};
      std::array<long, 4> counts{};
      bool ok = true;
      long total = 0;
      for (std::size_t k = 0; k < kids.size() && ok; ++k) {
        const auto c = count(kids[k]);
        if (!c || *c < 0) ok = false;
        else {
          counts[k] = *c;
          total += *c;
        }
      }
      if (!ok || total != m) continue;
      for (std::size_t k = 0; k < kids.size(); ++k) process(kids[k], counts[k], depth + 1);
      return;
    }
    flag(box, m, "no admissible subdivision");
  }
};

}  // namespace

ZeroList locate_zeros(const ComplexFunction& f, const Region& region, double tol, const LocateOptions& options) {
  if (!(tol > 0.0)) throw ParameterError("locate_zeros needs tol > 0");
  Locator loc{f, tol, options, {}};
  loc.out.region_count = winding_count(f, region, 64, options.winding).count;

  if (region.kind() == Region::Kind::rectangle) {
    loc.process(region, loc.out.region_count, 0);
  } else {
    // Search the (slightly enlarged) bounding square, then keep what lies inside.
    bool done = false;
    for (double pad : {1.0137, 1.0281, 1.0419, 1.0663}) {
      const cplx half = region.outer_radius() * pad * cplx(1.0, 1.0);
      const Region square = Region::rectangle(region.center() - half, region.center() + half);
      const auto c = loc.count(square);
      if (!c) continue;
      loc.process(square, *c, 0);
      done = true;
      break;
    }
    if (!done) throw UnreliableCountError("no admissible bounding box for " + region.describe(), region.outer_radius());
    std::vector<ZeroEntry> kept;
    for (const auto& z : loc.out.zeros)
      if (region.contains(z.location)) kept.push_back(z);
    loc.out.zeros = std::move(kept);
    std::vector<FlaggedBox> flagged;
    for (const auto& b : loc.out.flagged) {
      const cplx c = b.box.center();
      const double reach = 0.5 * std::abs(b.box.upper_right() - b.box.lower_left());
      const double d = std::abs(c - region.center());
      const bool touches = region.kind() == Region::Kind::disk
                               ? d - reach <= region.outer_radius()
                               : d + reach >= region.inner_radius() && d - reach <= region.outer_radius();
      if (touches) flagged.push_back(b);
    }
    loc.out.flagged = std::move(flagged);
  }

  std::sort(loc.out.zeros.begin(), loc.out.zeros.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  if (loc.out.total_multiplicity() != loc.out.region_count && loc.out.flagged.empty())
    loc.out.flagged.push_back({region, loc.out.region_count, "located multiplicities do not match the boundary count"});
  return loc.out;
}

// ---------------------------------------------------------------- density

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ParameterError("line fit needs matching samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ssr += e * e;
    }
    fit.stderr_slope = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

DensityReport density_estimate(const ComplexFunction& f, std::span<const double> radii, bool half_lattice,
                               const WindingOptions& options) {
  if (radii.size() < 4) throw ParameterError("density_estimate needs at least 4 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw ParameterError("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw ParameterError("radii must be strictly ascending");
  }
  DensityReport rep;
  rep.half_lattice = half_lattice;
  std::vector<double> xs, ys;
  for (double r : radii) {
    CountingReport c;
    try {
      c = winding_count(f, Region::disk(0.0, r), std::max(64, static_cast<int>(16 * r)), options);
    } catch (const ContourThroughZeroError& e) {
      throw UnreliableCountError("unreliable count at radius " + fmt(r) + ": " + e.what(), r);
    }
    if (!rep.counts.empty() && c.count < rep.counts.back())
      throw UnreliableCountError("counting function decreased at radius " + fmt(r), r);
    rep.radii.push_back(r);
    rep.counts.push_back(c.count);
    rep.details.push_back(c);
    xs.push_back(r);
    ys.push_back(static_cast<double>(c.count));
  }
  const LineFit fit = fit_line(xs, ys);
  rep.full_disk_slope = std::max(0.0, fit.slope);
  rep.full_disk_stderr = fit.stderr_slope;
  const double scale = half_lattice ? 0.5 : 1.0;
  rep.fitted_slope = scale * rep.full_disk_slope;
  rep.slope_stderr = scale * fit.stderr_slope;
  rep.intercept = scale * fit.intercept;
  return rep;
}

double titchmarsh_predict(double support_hull_length) {
  if (!(support_hull_length >= 0.0) || !std::isfinite(support_hull_length))
    throw ParameterError("support hull length must be non-negative");
  return support_hull_length / pi;
}

}  // namespace frozenspec
