#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frozenspec/charfun.hpp"
#include "frozenspec/density_lab.hpp"
#include "frozenspec/model.hpp"
#include "frozenspec/zeros.hpp"

namespace frozenspec {

/// rho (Delta^1 - Delta^2) expressed through q^ = q^1 - q^2 alone. Equal to
///   (sum_i u_i) * rho w_pi(q^) - u_pi * rho sum_i w_i(q^)
/// with u, w the determinant entries; evaluated in the regrouped form of
/// CharFun::closed_linear_part, which avoids the exp(|Im rho| a_N) cancellation.
/// Odd in rho, zero at rho = 0.
cplx identity_residual(const Potential& qhat, const FrozenConfig& config, cplx rho,
                       int base_panels = kDefaultQuadraturePanels);

/// rho [Delta^1(rho) - Delta^2(rho)] - sign * identity_residual(q^1 - q^2).
cplx identity_residual_difference_check(const Potential& q1, const Potential& q2, const FrozenConfig& config,
                                        cplx rho, int base_panels = kDefaultQuadraturePanels);

struct Eigenvalue {
  cplx lambda{};
  int multiplicity = 1;
  double residual = 0.0;  // |Delta(rho)| at the located rho
  cplx rho{};             // representative root, Re >= 0
};

struct Spectrum {
  std::vector<Eigenvalue> eigenvalues;  // sorted by |lambda|, then argument
  Region search_region = Region::disk(0.0, 1.0);
  std::string config_hash;
  long rho_zero_count = 0;  // winding count of the region boundary in rho
  long located_multiplicity = 0;
  std::vector<FlaggedBox> flagged;

  bool complete() const { return flagged.empty() && located_multiplicity == rho_zero_count; }
};

/// FNV-1a hash of the potential and configuration, as 16 hex digits.
std::string config_hash(const Potential& q, const FrozenConfig& config);

/// Eigenvalues lambda = rho^2 of the problem from the zeros of Delta in `region`
/// (rho-plane). A disk whose boundary passes through a zero is shrunk slightly.
Spectrum compute_spectrum(const Potential& q, const FrozenConfig& config, const Region& region,
                          const LocateOptions& options = {});

enum class InitKind { automatic, witness, random, zero };

const char* init_kind_name(InitKind k);

struct IsospectralOptions {
  int mode_budget = 12;
  double tol = 1e-8;
  double norm_floor = 0.1;
  int restarts = 8;
  std::uint64_t seed = 20240611;
  InitKind init = InitKind::automatic;
  int max_iterations = 60;
  /// Empty selects the default ladder: 0.2 k (k = 1..200) and 40 points on |rho| = 10.
  std::vector<cplx> sample_rhos;
  int verify_count = 10;
  double verify_radius = 10.2;
  bool verify = true;
};

struct IterationRecord {
  int start = 0;  // 0 is the initial start, 1.. are restarts
  int iteration = 0;
  double objective = 0.0;
  double damping = 0.0;
};

struct IsospectralResult {
  Potential qhat;
  double objective = 0.0;  // weighted sum of |Delta_{q1+q^} - Delta_{q1}|^2 over the samples
  double qhat_norm = 0.0;  // L2 norm over [0,pi]
  std::vector<double> spectra_match;  // |lambda_k(q1) - lambda_k(q1+q^)|
  std::vector<cplx> eigen_q1, eigen_q2;
  bool converged = false;
  bool spectra_verified = false;
  int iterations = 0;
  int starts = 0;
  int best_start = 0;
  std::uint64_t seed = 0;
  std::string init;  // witness / random / zero
  std::optional<long> witness_n0;
  double lattice_density = 0.0;
  std::vector<IterationRecord> log;  // accepted steps only; objective non-increasing per start
  std::vector<double> initial_objectives;
};

/// Default objective samples.
std::vector<cplx> default_sample_rhos();

/// Least-squares search for q^ != 0 (sine series, mode_budget terms, ||q^|| = norm_floor)
/// with Delta_{q1+q^} = Delta_{q1} at the sample points.
IsospectralResult isospectral_search(const Potential& q1, const FrozenConfig& config,
                                     const IsospectralOptions& options = {});

/// The four terms of the part-3 density balance.
struct Part3Report {
  Potential qhat;
  DensityReport sine_transform;   // int_0^pi sin(rho(pi-t)) q^ dt
  DensityReport cosine_sum;       // sum cos(rho a_i)
  DensityReport cos_pi;           // cos(rho pi)
  DensityReport kernel_sum;       // sum_i int_0^{a_i} sin(rho(a_i-t)) q^ dt
  double lhs = 0.0, lhs_stderr = 0.0;
  double rhs = 0.0, rhs_stderr = 0.0;
  double kernel_sum_bound = 0.0;   // 2 a_N / pi
  double margin = 0.0;             // bound - kernel_sum slope
  double rhs_bound = 0.0;          // 2 + 2 a_N / pi
  bool consistent = false;         // kernel_sum slope < bound + 3 stderr
  // Half-lattice values (one sign class of zeros).
  double lhs_half = 0.0, rhs_half = 0.0, margin_half = 0.0, rhs_bound_half = 0.0;
};

/// q^ = window_restrict(q, window), or q itself when no window is given.
Part3Report part3_experiment(const Potential& q, const std::optional<SupportWindow>& window,
                             const FrozenConfig& config, std::span<const double> radii,
                             const WindingOptions& options = {});

}  // namespace frozenspec
