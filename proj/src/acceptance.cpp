#include "frozenspec/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "frozenspec/charfun.hpp"
#include "frozenspec/density_lab.hpp"
#include "frozenspec/errors.hpp"
#include "frozenspec/inverse_lab.hpp"
#include "frozenspec/zeros.hpp"
#include "json.hpp"

namespace frozenspec {

namespace {

std::string g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool passed = false;
  std::string measured;
  std::string threshold;
};

Potential random_potential(std::mt19937_64& rng, int max_modes) {
  std::uniform_int_distribution<int> modes(1, max_modes);
  std::normal_distribution<double> coef(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(modes(rng)));
  for (auto& v : c) v = coef(rng);
  return Potential::from_sine(std::move(c));
}

std::vector<double> random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.05, pi - 0.05);
  while (true) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto& v : p) v = u(rng);
    std::sort(p.begin(), p.end());
    bool ok = true;
    for (std::size_t i = 1; i < p.size(); ++i) ok = ok && p[i] - p[i - 1] > 1e-3;
    if (ok) return p;
  }
}

cplx random_rho(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double th = 2.0 * pi * u(rng);
  return r * cplx(std::cos(th), std::sin(th));
}

// 1 ---------------------------------------------------------------------------
Outcome unperturbed_spectra(double scale) {
  const double tol = 1e-8 * scale;
  struct Case {
    int alpha, beta;
    std::vector<double> expected;
  };
  const std::vector<Case> cases = {{0, 0, {1, 4, 9, 16, 25}},
                                   {0, 1, {0.25, 2.25, 6.25, 12.25, 20.25}},
                                   {1, 0, {0.25, 2.25, 6.25, 12.25, 20.25}}};
  Outcome o;
  o.passed = true;
  double worst_err = 0.0, worst_time = 0.0;
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = FrozenConfig::from_fractions({Fraction::make(1, 3)}, c.alpha, c.beta);
    const Spectrum s = compute_spectrum(Potential(), cfg, Region::disk(0.0, 5.5));
    worst_time = std::max(worst_time, seconds_since(t0));
    if (s.eigenvalues.size() != c.expected.size()) {
      o.passed = false;
      o.measured += "(" + std::to_string(c.alpha) + "," + std::to_string(c.beta) + ") found " +
                    std::to_string(s.eigenvalues.size()) + " eigenvalues; ";
      continue;
    }
    for (std::size_t i = 0; i < c.expected.size(); ++i)
      worst_err = std::max(worst_err, std::abs(s.eigenvalues[i].lambda - c.expected[i]));
  }
  o.passed = o.passed && worst_err <= tol && worst_time < 10.0;
  o.measured += "max |lambda - exact| = " + g(worst_err);
  o.threshold = "<= " + g(tol) + ", < 10 s per case";
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome determinant_agreement(double scale) {
  const double tol = 1e-10 * scale;
  std::mt19937_64 rng(2001);
  std::uniform_int_distribution<int> npts(1, 4), flag(0, 1);
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 1000; ++k) {
    const auto cfg = FrozenConfig::make(random_points(rng, npts(rng)), flag(rng), flag(rng));
    const CharFun cf(cfg, random_potential(rng, 6));
    const cplx rho = random_rho(rng, 50.0);
    const cplx det = cf.eval_det(rho);
    worst = std::max(worst, std::abs(det - cf.eval_closed(rho)) / (1.0 + std::abs(det)));
  }
  const double t = seconds_since(t0);
  return {worst <= tol && t < 60.0, "max |det - closed| / (1 + |det|) = " + g(worst), "<= " + g(tol) + ", < 60 s"};
}

// 3 ---------------------------------------------------------------------------
Outcome identity_derivation(double scale) {
  const double tol = 1e-10 * scale;
  std::mt19937_64 rng(3003);
  double worst = 0.0, zero_case = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto cfg = FrozenConfig::make(random_points(rng, n), 1, 0);
    const Potential q1 = random_potential(rng, 6);
    const Potential q2 = random_potential(rng, 6);
    const CharFun d1(cfg, q1);
    for (int k = 0; k < 50; ++k) {
      const cplx rho = random_rho(rng, 20.0);
      const cplx r = identity_residual_difference_check(q1, q2, cfg, rho);
      worst = std::max(worst, std::abs(r) / (1.0 + std::abs(rho * d1(rho))));
      zero_case = std::max(zero_case, std::abs(identity_residual(Potential(), cfg, rho)));
      zero_case = std::max(zero_case, std::abs(identity_residual_difference_check(q1, q1, cfg, rho)));
    }
  }
  const double eps = 1e-15 * scale;
  return {worst <= tol && zero_case <= eps,
          "max relative difference = " + g(worst) + "; q^ = 0 residual = " + g(zero_case),
          "<= " + g(tol) + "; q^ = 0 <= " + g(eps)};
}

// 4 ---------------------------------------------------------------------------
Outcome zero_counting(double scale) {
  const double tol = 1e-10 * scale;
  const ComplexFunction f = [](cplx z) { return std::cos(pi * z); };
  const auto c = winding_count(f, Region::disk(0.0, 10.2));
  const auto zl = locate_zeros(f, Region::rectangle({0.0, -1.0}, {3.0, 1.0}));
  const std::vector<double> expected = {0.5, 1.5, 2.5};
  double err = zl.zeros.size() == expected.size() ? 0.0 : INFINITY;
  if (std::isfinite(err))
    for (std::size_t i = 0; i < expected.size(); ++i)
      err = std::max(err, std::abs(zl.zeros[i].location - expected[i]));
  std::string m = "N(10.2) = " + std::to_string(c.count) + "; " + std::to_string(zl.zeros.size()) +
                  " zeros in [0,3]x[-1,1], max error " + g(err);
  return {c.count == 20 && err <= tol, m, "N = 20 exactly; errors <= " + g(tol)};
}

// 5 ---------------------------------------------------------------------------
Outcome titchmarsh_proportionality(double scale) {
  const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3, 160.3};
  const Potential full = Potential::from_modes({{1, 1.0}});
  const Potential half = full.with_support({{0.0, 0.5 * pi}});
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = support_proportionality_check(half, full, radii);
  const double t = seconds_since(t0);
  const double tol = 0.05 * scale;
  const double rel = std::abs(rep.ratio - 0.5) / 0.5;
  return {rel <= tol && t < 300.0,
          "slopes " + g(rep.partial.full_disk_slope) + " (support [0,pi/2]) / " + g(rep.full.full_disk_slope) +
              " (full) = " + g(rep.ratio),
          "ratio 0.5 within " + g(100.0 * tol) + "%, < 300 s"};
}

// 6 ---------------------------------------------------------------------------
Outcome sum_product_rules(double scale) {
  const std::vector<double> radii = {10.2, 20.2, 40.2, 80.2};
  const ComplexFunction f = *builtin_function("cos_pi");
  const ComplexFunction h = *builtin_function("cos_half_pi");
  const auto rep = density_sum_rule_check(f, h, radii);
  const auto same = density_sum_rule_check(f, f, radii);
  const double tol = 0.05 * scale;
  const bool ok = rep.product_relative <= tol && rep.sum_checked && rep.sum_relative <= tol && !same.sum_checked &&
                  !same.skip_reason.empty();
  return {ok,
          "d(fg) = " + g(rep.product.full_disk_slope) + " vs " + g(rep.f.full_disk_slope + rep.g.full_disk_slope) +
              "; d(f+g) = " + g(rep.sum.full_disk_slope) + " vs " +
              g(std::max(rep.f.full_disk_slope, rep.g.full_disk_slope)) + "; equal pair " +
              (same.sum_checked ? "not skipped" : "skipped"),
          "within " + g(100.0 * tol) + "%; equal pair skipped"};
}

// 7 ---------------------------------------------------------------------------
Outcome transform_densities(double scale) {
  const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3, 160.3};
  const auto rep = transform_density_check(Potential::from_modes({{1, 1.0}}), radii);
  const double tol = 0.05 * scale;
  return {rep.max_relative_difference <= tol,
          "slopes exp " + g(rep.exponential.full_disk_slope) + ", cos " + g(rep.cosine.full_disk_slope) + ", sin " +
              g(rep.sine.full_disk_slope) + "; max pairwise " + g(100.0 * rep.max_relative_difference) + "%",
          "pairwise within " + g(100.0 * tol) + "%"};
}

// 8 ---------------------------------------------------------------------------
Outcome lattice_densities(double) {
  struct Case {
    std::vector<Fraction> pts;
    Fraction expected;
  };
  const std::vector<Case> cases = {{{Fraction::make(1, 3)}, Fraction::make(1, 3)},
                                   {{Fraction::make(1, 2)}, Fraction::make(0, 1)},
                                   {{Fraction::make(1, 3), Fraction::make(2, 3)}, Fraction::make(0, 1)}};
  bool ok = true;
  std::string m;
  for (const auto& c : cases) {
    const auto cfg = FrozenConfig::from_fractions(c.pts, 0, 0);
    std::string seen;
    for (long n_max : {6L, 60L, 600L}) {
      const auto rep = lattice_vanishing_density(cfg, n_max, LatticeMethod::exact_period_scan);
      ok = ok && rep.exact_fraction && *rep.exact_fraction == c.expected;
      const std::string f = rep.exact_fraction ? rep.exact_fraction->str() : "none";
      if (seen.empty()) seen = f;
      else if (seen != f) seen += "/" + f;
    }
    if (!m.empty()) m += ", ";
    m += seen;
  }
  return {ok, "fractions " + m, "exactly 1/3, 0, 0 for n_max in {6, 60, 600}"};
}

// 9, 10 -----------------------------------------------------------------------
IsospectralOptions search_options(double scale) {
  IsospectralOptions o;
  o.tol = 1e-8 * scale;
  return o;
}

const Potential& base_potential() {
  static const Potential q = Potential::from_modes({{1, 0.5}});
  return q;
}

Outcome part1_nonuniqueness(double scale) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = FrozenConfig::from_fractions({Fraction::make(1, 3)}, 1, 0);
  const auto res = isospectral_search(base_potential(), cfg, search_options(scale));
  const double t = seconds_since(t0);
  const double match_tol = 1e-6 * scale;
  double worst = res.spectra_match.empty() ? INFINITY : 0.0;
  for (double d : res.spectra_match) worst = std::max(worst, d);
  const bool ok = res.converged && res.objective < 1e-8 * scale && res.qhat_norm >= 0.1 &&
                  res.spectra_match.size() == 10 && worst <= match_tol && res.spectra_verified && t < 600.0;
  return {ok,
          std::string(res.converged ? "converged" : "not converged") + ", objective " + g(res.objective) +
              ", ||q^|| = " + g(res.qhat_norm) + ", " + std::to_string(res.spectra_match.size()) +
              " eigenvalues matched to " + g(worst),
          "objective < " + g(1e-8 * scale) + ", ||q^|| >= 0.1, match <= " + g(match_tol) + ", < 600 s"};
}

Outcome part2_falsification(double scale) {
  const auto cfg = FrozenConfig::make({1.0}, 1, 0);
  const auto res = isospectral_search(base_potential(), cfg, search_options(scale));
  const double floor = 1e-4 / scale;
  return {!res.converged && res.objective >= floor,
          std::string(res.converged ? "converged" : "not converged") + " after " + std::to_string(res.starts) +
              " starts, objective " + g(res.objective),
          "not converged, objective >= " + g(floor)};
}

// 11 --------------------------------------------------------------------------
Outcome part3_bookkeeping(double scale) {
  const std::vector<double> radii = {10.3, 20.3, 40.3, 80.3};
  const auto cfg = FrozenConfig::make({1.0, 2.0}, 1, 0);
  SupportWindow w;
  w.delta = 0.4;
  const auto rep = part3_experiment(Potential::from_modes({{1, 1.0}, {2, 0.5}}), w, cfg, radii);
  const double allowance = 3.0 * scale * rep.kernel_sum.full_disk_stderr;
  const bool finite = std::isfinite(rep.lhs_stderr) && std::isfinite(rep.rhs_stderr);
  const bool ok = finite && rep.kernel_sum.full_disk_slope < rep.kernel_sum_bound + allowance;
  return {ok,
          "slopes " + g(rep.sine_transform.full_disk_slope) + " + " + g(rep.cosine_sum.full_disk_slope) + " | " +
              g(rep.cos_pi.full_disk_slope) + " + " + g(rep.kernel_sum.full_disk_slope) + " (stderr " +
              g(rep.kernel_sum.full_disk_stderr) + ")",
          "kernel-sum slope < " + g(rep.kernel_sum_bound) + " + " + g(allowance)};
}

struct Entry {
  int id;
  const char* name;
  std::function<Outcome(double)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {1, "unperturbed spectra", unperturbed_spectra},
      {2, "determinant path agreement", determinant_agreement},
      {3, "integral identity derivation", identity_derivation},
      {4, "zero counting", zero_counting},
      {5, "support proportionality", titchmarsh_proportionality},
      {6, "density sum and product rules", sum_product_rules},
      {7, "transform densities", transform_densities},
      {8, "lattice vanishing densities", lattice_densities},
      {9, "non-uniqueness search", part1_nonuniqueness},
      {10, "uniqueness falsification", part2_falsification},
      {11, "part-3 density bookkeeping", part3_bookkeeping},
  };
  return r;
}

CriterionResult run_one(const Entry& e, double scale) {
  CriterionResult r;
  r.id = e.id;
  r.name = e.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.run(scale);
    r.passed = o.passed;
    r.measured = o.measured;
    r.threshold = o.threshold;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.measured = std::string("error: ") + ex.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_ids(const std::vector<int>& ids, double scale) {
  std::vector<CriterionResult> out;
  for (const auto& e : registry())
    if (std::find(ids.begin(), ids.end(), e.id) != ids.end()) out.push_back(run_one(e, scale));
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  if (!(options.tolerance_scale > 0.0) || !std::isfinite(options.tolerance_scale))
    throw ParameterError("tolerance scale must be positive");
  std::vector<int> ids = options.only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > kCriterionCount) throw ParameterError("unknown criterion id " + std::to_string(id));

  std::vector<int> core;
  for (int id : ids)
    if (id != 12) core.push_back(id);
  std::vector<CriterionResult> out = run_ids(core, options.tolerance_scale);

  if (std::find(ids.begin(), ids.end(), 12) != ids.end()) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> all;
    for (int i = 1; i < kCriterionCount; ++i) all.push_back(i);
    const auto first = core.size() == all.size() ? out : run_ids(all, options.tolerance_scale);
    const auto second = run_ids(all, options.tolerance_scale);
    const bool same_csv = acceptance_csv(first) == acceptance_csv(second);
    const bool same_json = acceptance_json(first) == acceptance_json(second);
    CriterionResult r;
    r.id = 12;
    r.name = "determinism";
    r.passed = same_csv && same_json;
    r.measured = std::string("CSV ") + (same_csv ? "identical" : "differs") + ", JSON " +
                 (same_json ? "identical" : "differs") + " across two runs of criteria 1-11";
    r.threshold = "byte-identical";
    r.seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

std::string acceptance_csv(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << "id,name,passed,measured,threshold\n";
  for (const auto& r : results)
    os << r.id << ',' << csv_field(r.name) << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.measured)
       << ',' << csv_field(r.threshold) << '\n';
  return os.str();
}

std::string acceptance_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measured", r.measured},
                   {"threshold", r.threshold}});
  nlohmann::json doc = {{"criteria", arr}, {"all_passed", all_passed(results)}};
  return doc.dump(2) + "\n";
}

std::string acceptance_text(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-32s (%.1f s) ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds);
    os << head << r.measured << " | required " << r.threshold << '\n';
  }
  const long passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  os << passed << "/" << results.size() << " criteria passed\n";
  return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace frozenspec
