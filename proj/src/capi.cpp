#include "frozenspec/frozenspec.h"

#include <exception>
#include <new>
#include <string>

#include "frozenspec/config.hpp"
#include "frozenspec/errors.hpp"
#include "frozenspec/report.hpp"

#ifndef FROZENSPEC_VERSION
#define FROZENSPEC_VERSION "0.0.0"
#endif

struct fs_problem {
  frozenspec::ProblemSpec spec;
};

struct fs_report {
  frozenspec::Report report;
};

namespace {

thread_local std::string last_error;

fs_status to_status(frozenspec::ErrorCode code) {
  using frozenspec::ErrorCode;
  switch (code) {
    case ErrorCode::parameter: return FS_ERR_PARAMETER;
    case ErrorCode::domain: return FS_ERR_DOMAIN;
    case ErrorCode::numeric: return FS_ERR_NUMERIC;
    case ErrorCode::contour_through_zero: return FS_ERR_CONTOUR_THROUGH_ZERO;
    case ErrorCode::unreliable_count: return FS_ERR_UNRELIABLE_COUNT;
    case ErrorCode::mode: return FS_ERR_MODE;
    case ErrorCode::config: return FS_ERR_CONFIG;
    case ErrorCode::io: return FS_ERR_IO;
  }
  return FS_ERR_INTERNAL;
}

template <class F>
fs_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return FS_OK;
  } catch (const frozenspec::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return FS_ERR_INTERNAL;
  }
}

fs_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FS_ERR_NULL_ARGUMENT;
}

fs_status emit(frozenspec::Report r, fs_report** out) {
  *out = new fs_report{std::move(r)};
  return FS_OK;
}

}  // namespace

extern "C" {

const char* fs_version(void) { return FROZENSPEC_VERSION; }

const char* fs_last_error(void) { return last_error.c_str(); }

const char* fs_status_name(fs_status status) {
  switch (status) {
    case FS_OK: return "ok";
    case FS_ERR_PARAMETER: return "parameter";
    case FS_ERR_DOMAIN: return "domain";
    case FS_ERR_NUMERIC: return "numeric";
    case FS_ERR_CONTOUR_THROUGH_ZERO: return "contour_through_zero";
    case FS_ERR_UNRELIABLE_COUNT: return "unreliable_count";
    case FS_ERR_MODE: return "mode";
    case FS_ERR_CONFIG: return "config";
    case FS_ERR_IO: return "io";
    case FS_ERR_NULL_ARGUMENT: return "null_argument";
    case FS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

fs_status fs_problem_load(const char* path, fs_problem** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new fs_problem{frozenspec::load_problem(path)}; });
}

fs_status fs_problem_parse(const char* json_text, fs_problem** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new fs_problem{frozenspec::parse_problem(json_text)}; });
}

fs_status fs_problem_from_points(const char* points_over_pi, int alpha, int beta, fs_problem** out) {
  if (!points_over_pi) return null_argument("points_over_pi");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new fs_problem{
        {frozenspec::parse_points_over_pi(points_over_pi, alpha, beta), frozenspec::Potential(), std::nullopt,
         std::nullopt}};
  });
}

void fs_problem_free(fs_problem* problem) { delete problem; }

fs_status fs_problem_point_count(const fs_problem* problem, size_t* out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = problem->spec.config.size();
  return FS_OK;
}

fs_status fs_charfun_eval(const fs_problem* problem, double rho_re, double rho_im, int path, double* out_re,
                          double* out_im) {
  if (!problem) return null_argument("problem");
  if (!out_re || !out_im) return null_argument("out");
  return guarded([&] {
    const frozenspec::CharFun cf(problem->spec.config, problem->spec.potential,
                                 path == FS_PATH_DETERMINANT ? frozenspec::EvalPath::determinant
                                                             : frozenspec::EvalPath::closed_form);
    const frozenspec::cplx v = cf({rho_re, rho_im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

fs_status fs_charfun_grid(const fs_problem* problem, const char* grid, int path, fs_report** out) {
  if (!problem) return null_argument("problem");
  if (!grid) return null_argument("grid");
  if (!out) return null_argument("out");
  return guarded([&] {
    emit(frozenspec::charfun_report(problem->spec, frozenspec::parse_grid(grid),
                                    path == FS_PATH_DETERMINANT ? frozenspec::EvalPath::determinant
                                                                : frozenspec::EvalPath::closed_form),
         out);
  });
}

fs_status fs_spectrum(const fs_problem* problem, double radius, uint64_t seed, fs_report** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] { emit(frozenspec::spectrum_report(problem->spec, radius, seed), out); });
}

fs_status fs_zeros(const fs_problem* problem, const char* function, const char* region, double tol,
                   fs_report** out) {
  if (!function) return null_argument("function");
  if (!region) return null_argument("region");
  if (!out) return null_argument("out");
  return guarded([&] {
    emit(frozenspec::zeros_report(function, problem ? &problem->spec : nullptr, frozenspec::parse_region(region),
                                  tol),
         out);
  });
}

fs_status fs_density(const fs_problem* problem, const char* function, const double* radii, size_t n_radii,
                     int half_lattice, fs_report** out) {
  if (!function) return null_argument("function");
  if (!radii && n_radii) return null_argument("radii");
  if (!out) return null_argument("out");
  return guarded([&] {
    emit(frozenspec::density_report(function, problem ? &problem->spec : nullptr, {radii, n_radii}, half_lattice != 0),
         out);
  });
}

fs_status fs_lattice_density(const fs_problem* problem, long n_max, int method, int digits, fs_report** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::optional<frozenspec::LatticeMethod> m;
    if (method == FS_LATTICE_EXACT) m = frozenspec::LatticeMethod::exact_period_scan;
    else if (method == FS_LATTICE_NUMERIC) m = frozenspec::LatticeMethod::numeric_scan;
    else if (method != FS_LATTICE_AUTO) throw frozenspec::ParameterError("unknown lattice method");
    emit(frozenspec::lattice_report(problem->spec.config, n_max, m, digits), out);
  });
}

fs_status fs_identity_residual(const fs_problem* problem, const double* rho_re, const double* rho_im, size_t n,
                               fs_report** out) {
  if (!problem) return null_argument("problem");
  if ((!rho_re || !rho_im) && n) return null_argument("rho");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<frozenspec::cplx> rhos;
    for (size_t k = 0; k < n; ++k) rhos.emplace_back(rho_re[k], rho_im[k]);
    emit(frozenspec::identity_report(problem->spec, rhos), out);
  });
}

fs_status fs_parse_complex_list(const char* text, double* re, double* im, size_t cap, size_t* n) {
  if (!text) return null_argument("text");
  if (!n) return null_argument("n");
  return guarded([&] {
    const auto values = frozenspec::parse_complex_list(text);
    if (values.size() > cap) throw frozenspec::ParameterError("more complex values than the buffer holds");
    if (!values.empty() && (!re || !im)) throw frozenspec::ParameterError("null output buffer");
    for (size_t k = 0; k < values.size(); ++k) {
      re[k] = values[k].real();
      im[k] = values[k].imag();
    }
    *n = values.size();
  });
}

void fs_isospectral_defaults(fs_isospectral_params* params) {
  if (!params) return;
  const frozenspec::IsospectralOptions d;
  params->mode_budget = d.mode_budget;
  params->tol = d.tol;
  params->norm_floor = d.norm_floor;
  params->restarts = d.restarts;
  params->seed = d.seed;
  params->init = FS_INIT_AUTO;
  params->max_iterations = d.max_iterations;
}

fs_status fs_isospectral(const fs_problem* problem, const fs_isospectral_params* params, fs_report** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] {
    frozenspec::IsospectralOptions o;
    if (params) {
      o.mode_budget = params->mode_budget;
      o.tol = params->tol;
      o.norm_floor = params->norm_floor;
      o.restarts = params->restarts;
      o.seed = params->seed;
      o.max_iterations = params->max_iterations;
      switch (params->init) {
        case FS_INIT_AUTO: o.init = frozenspec::InitKind::automatic; break;
        case FS_INIT_WITNESS: o.init = frozenspec::InitKind::witness; break;
        case FS_INIT_RANDOM: o.init = frozenspec::InitKind::random; break;
        case FS_INIT_ZERO: o.init = frozenspec::InitKind::zero; break;
        default: throw frozenspec::ParameterError("unknown initialisation kind");
      }
    }
    emit(frozenspec::isospectral_report(problem->spec, o), out);
  });
}

fs_status fs_part3(const fs_problem* problem, const double* radii, size_t n_radii, fs_report** out) {
  if (!problem) return null_argument("problem");
  if (!radii && n_radii) return null_argument("radii");
  if (!out) return null_argument("out");
  return guarded([&] { emit(frozenspec::part3_report(problem->spec, {radii, n_radii}), out); });
}

fs_status fs_verify(const int* only, size_t n_only, double tolerance_scale, fs_report** out) {
  if (!only && n_only) return null_argument("only");
  if (!out) return null_argument("out");
  return guarded([&] {
    frozenspec::AcceptanceOptions o;
    o.only.assign(only, only + n_only);
    o.tolerance_scale = tolerance_scale;
    emit(frozenspec::verify_report(o), out);
  });
}

const char* fs_report_kind(const fs_report* report) { return report ? report->report.kind.c_str() : ""; }
const char* fs_report_json(const fs_report* report) { return report ? report->report.json.c_str() : ""; }
const char* fs_report_csv(const fs_report* report) { return report ? report->report.csv.c_str() : ""; }
const char* fs_report_svg(const fs_report* report) { return report ? report->report.svg.c_str() : ""; }
const char* fs_report_text(const fs_report* report) { return report ? report->report.text.c_str() : ""; }

int fs_report_outcome(const fs_report* report) {
  if (!report) return FS_OUTCOME_FAILED;
  switch (report->report.outcome) {
    case frozenspec::Outcome::ok: return FS_OUTCOME_OK;
    case frozenspec::Outcome::not_found: return FS_OUTCOME_NOT_FOUND;
    case frozenspec::Outcome::unreliable: return FS_OUTCOME_UNRELIABLE;
    case frozenspec::Outcome::failed: return FS_OUTCOME_FAILED;
  }
  return FS_OUTCOME_FAILED;
}

void fs_report_free(fs_report* report) { delete report; }

}  // extern "C"
