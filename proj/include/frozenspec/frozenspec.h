#ifndef FROZENSPEC_H
#define FROZENSPEC_H

/* C interface of the frozenspec library. All handles are opaque; every
   function returns an fs_status and leaves a message in fs_last_error()
   (per thread) on failure. Strings returned by accessors live as long as
   the owning handle. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FS_API __declspec(dllexport)
#else
#define FS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_PARAMETER = 1,
  FS_ERR_DOMAIN = 2,
  FS_ERR_NUMERIC = 3,
  FS_ERR_CONTOUR_THROUGH_ZERO = 4,
  FS_ERR_UNRELIABLE_COUNT = 5,
  FS_ERR_MODE = 6,
  FS_ERR_CONFIG = 7,
  FS_ERR_IO = 8,
  FS_ERR_NULL_ARGUMENT = 9,
  FS_ERR_INTERNAL = 10
} fs_status;

/* What a completed operation found. */
typedef enum fs_outcome {
  FS_OUTCOME_OK = 0,
  FS_OUTCOME_NOT_FOUND = 1,  /* isospectral search did not converge */
  FS_OUTCOME_UNRELIABLE = 2, /* incomplete zero localisation */
  FS_OUTCOME_FAILED = 3      /* acceptance criteria failed */
} fs_outcome;

typedef enum fs_eval_path { FS_PATH_CLOSED_FORM = 0, FS_PATH_DETERMINANT = 1 } fs_eval_path;

typedef enum fs_lattice_method {
  FS_LATTICE_AUTO = -1,
  FS_LATTICE_EXACT = 0,
  FS_LATTICE_NUMERIC = 1
} fs_lattice_method;

typedef enum fs_init_kind { FS_INIT_AUTO = 0, FS_INIT_WITNESS = 1, FS_INIT_RANDOM = 2, FS_INIT_ZERO = 3 } fs_init_kind;

typedef struct fs_problem fs_problem;
typedef struct fs_report fs_report;

typedef struct fs_isospectral_params {
  int mode_budget;
  double tol;
  double norm_floor;
  int restarts;
  uint64_t seed;
  int init; /* fs_init_kind */
  int max_iterations;
} fs_isospectral_params;

FS_API const char* fs_version(void);
FS_API const char* fs_last_error(void);
FS_API const char* fs_status_name(fs_status status);

/* Problems: configuration plus potentials, from a JSON file or text. */
FS_API fs_status fs_problem_load(const char* path, fs_problem** out);
FS_API fs_status fs_problem_parse(const char* json_text, fs_problem** out);
/* q = 0 on a comma-separated list of points over pi ("1/3,2/3"). */
FS_API fs_status fs_problem_from_points(const char* points_over_pi, int alpha, int beta, fs_problem** out);
FS_API void fs_problem_free(fs_problem* problem);
FS_API fs_status fs_problem_point_count(const fs_problem* problem, size_t* out);

/* Delta at one rho. */
FS_API fs_status fs_charfun_eval(const fs_problem* problem, double rho_re, double rho_im, int path, double* out_re,
                                 double* out_im);

/* Report producing operations. `*out` is set only on FS_OK. */
FS_API fs_status fs_charfun_grid(const fs_problem* problem, const char* grid, int path, fs_report** out);
FS_API fs_status fs_spectrum(const fs_problem* problem, double radius, uint64_t seed, fs_report** out);
/* function: "charfun", "sine-transform" or "builtin:NAME"; problem may be NULL for builtins.
   region: "disk:R", "disk:R@re,im", "annulus:r1,r2" or "rect:x0,y0,x1,y1". */
FS_API fs_status fs_zeros(const fs_problem* problem, const char* function, const char* region, double tol,
                          fs_report** out);
FS_API fs_status fs_density(const fs_problem* problem, const char* function, const double* radii, size_t n_radii,
                            int half_lattice, fs_report** out);
FS_API fs_status fs_lattice_density(const fs_problem* problem, long n_max, int method, int digits, fs_report** out);
FS_API fs_status fs_identity_residual(const fs_problem* problem, const double* rho_re, const double* rho_im,
                                      size_t n, fs_report** out);
/* Parses "2,1+0.5i,-3i" into caller arrays of capacity `cap`; `*n` receives the count. */
FS_API fs_status fs_parse_complex_list(const char* text, double* re, double* im, size_t cap, size_t* n);
FS_API void fs_isospectral_defaults(fs_isospectral_params* params);
FS_API fs_status fs_isospectral(const fs_problem* problem, const fs_isospectral_params* params, fs_report** out);
FS_API fs_status fs_part3(const fs_problem* problem, const double* radii, size_t n_radii, fs_report** out);
/* only: criterion ids to run, or NULL / 0 for all. */
FS_API fs_status fs_verify(const int* only, size_t n_only, double tolerance_scale, fs_report** out);

FS_API const char* fs_report_kind(const fs_report* report);
FS_API const char* fs_report_json(const fs_report* report);
FS_API const char* fs_report_csv(const fs_report* report);
/* Empty string when the operation has no plot. */
FS_API const char* fs_report_svg(const fs_report* report);
FS_API const char* fs_report_text(const fs_report* report);
FS_API int fs_report_outcome(const fs_report* report);
FS_API void fs_report_free(fs_report* report);

#ifdef __cplusplus
}
#endif

#endif
