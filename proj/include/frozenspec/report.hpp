#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frozenspec/acceptance.hpp"
#include "frozenspec/charfun.hpp"
#include "frozenspec/config.hpp"
#include "frozenspec/density_lab.hpp"
#include "frozenspec/inverse_lab.hpp"

namespace frozenspec {

enum class Outcome { ok, not_found, unreliable, failed };

// Rendered result of one operation. Every field is deterministic in the inputs;
// nothing time- or host-dependent is embedded.
struct Report {
  std::string kind;
  std::string json;
  std::string csv;
  std::string svg;   // empty when the operation has no plot
  std::string text;  // structured text record with the CSV block embedded
  Outcome outcome = Outcome::ok;
};

/// Inclusive real grid start:stop:step.
struct GridSpec {
  double start = 0.0, stop = 0.0, step = 0.0;
  std::vector<double> values() const;
};
GridSpec parse_grid(const std::string& text);
/// Comma-separated reals.
std::vector<double> parse_real_list(const std::string& text);
/// Comma-separated complex numbers: "2", "1+0.5i", "-3i".
std::vector<cplx> parse_complex_list(const std::string& text);
/// "disk:R", "disk:R@re,im", "annulus:r1,r2", "rect:x0,y0,x1,y1".
Region parse_region(const std::string& text);

/// rho -> value for "charfun", "sine-transform" (of the problem potential) or
/// "builtin:NAME". The problem may be null for builtins.
ComplexFunction resolve_function(const std::string& name, const ProblemSpec* problem);

Report charfun_report(const ProblemSpec& problem, const GridSpec& grid, EvalPath path = EvalPath::closed_form);
Report spectrum_report(const ProblemSpec& problem, double radius, std::uint64_t seed = 0);
Report zeros_report(const std::string& function, const ProblemSpec* problem, const Region& region, double tol);
Report density_report(const std::string& function, const ProblemSpec* problem, std::span<const double> radii,
                      bool half_lattice);
/// Automatic method when `method` is empty.
Report lattice_report(const FrozenConfig& config, long n_max, std::optional<LatticeMethod> method, int digits);
/// Needs potential and potential2.
Report identity_report(const ProblemSpec& problem, std::span<const cplx> rhos);
Report isospectral_report(const ProblemSpec& problem, const IsospectralOptions& options);
Report part3_report(const ProblemSpec& problem, std::span<const double> radii);
Report verify_report(const AcceptanceOptions& options);

}  // namespace frozenspec
