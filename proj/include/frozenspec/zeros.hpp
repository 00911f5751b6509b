#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "frozenspec/model.hpp"

namespace frozenspec {

/// Entire function of rho. Callables handed to the counting routines may be
/// invoked from several threads at once and must be pure.
using ComplexFunction = std::function<cplx(cplx)>;

/// N_f(r): zeros of f inside a contour, counted with multiplicity.
struct CountingReport {
  double radius = 0.0;  // outer radius, or half the diagonal for rectangles
  long count = 0;
  int contour_nodes = 0;
  double max_residual = 0.0;  // distance of the raw integral from the nearest integer
  cplx raw_integral{};
};

struct WindingOptions {
  int max_nodes = 1 << 19;
  /// A node closer to a zero than floor * (1 + |z|) (Newton distance |f/f'|)
  /// counts as the contour passing through that zero.
  double floor = 1e-12;
  /// Two successive refinements must agree to this before a count is accepted.
  double convergence = 1e-3;
};

CountingReport winding_count(const ComplexFunction& f, const Region& region, int nodes = 64,
                             const WindingOptions& options = {});

struct ZeroEntry {
  cplx location{};
  int multiplicity = 1;
  double residual = 0.0;  // |f| at the returned location
  bool converged = true;
};

struct FlaggedBox {
  Region box;
  long count = 0;
  std::string reason;
};

struct ZeroList {
  std::vector<ZeroEntry> zeros;
  std::vector<FlaggedBox> flagged;
  long region_count = 0;  // winding count of the region boundary

  long total_multiplicity() const;
  bool complete() const { return flagged.empty() && total_multiplicity() == region_count; }
};

struct LocateOptions {
  int max_depth = 60;
  int newton_iterations = 50;
  double residual_factor = 1e-8;
  WindingOptions winding{};
};

/// Quadtree subdivision guided by winding counts, with (modified) Newton polishing.
ZeroList locate_zeros(const ComplexFunction& f, const Region& region, double tol = 1e-6,
                      const LocateOptions& options = {});

struct DensityReport {
  std::vector<double> radii;
  std::vector<long> counts;  // full-disk counts
  double fitted_slope = 0.0;  // in the selected convention
  double slope_stderr = 0.0;
  double intercept = 0.0;
  bool half_lattice = false;  // halve symmetric counts (one sign class)
  double full_disk_slope = 0.0;
  double full_disk_stderr = 0.0;
  std::vector<CountingReport> details;
};

/// Least-squares line through (r, N_f(r)) with free intercept.
DensityReport density_estimate(const ComplexFunction& f, std::span<const double> radii, bool half_lattice = false,
                               const WindingOptions& options = {});

/// Slope of a least-squares fit with free intercept: {slope, stderr, intercept}.
struct LineFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Predicted full-disk density of the Fourier transform of data supported on a
/// hull of the given length.
double titchmarsh_predict(double support_hull_length);

/// Newton polishing of a zero of known multiplicity with finite-difference derivative.
struct NewtonResult {
  cplx z{};
  bool converged = false;
  int iterations = 0;
};
NewtonResult newton_polish(const ComplexFunction& f, cplx start, int multiplicity = 1, int max_iterations = 50);

/// Central-difference derivative with step 1e-6 (1 + |z|).
cplx fd_derivative(const ComplexFunction& f, cplx z);

}  // namespace frozenspec
