#include <math.h>
#include <stdio.h>
#include <string.h>

#include "frozenspec/frozenspec.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  EXPECT(strlen(fs_version()) > 0);
  EXPECT(strcmp(fs_status_name(FS_ERR_CONFIG), "config") == 0);

  fs_problem* p = NULL;
  EXPECT(fs_problem_from_points("1/3", 0, 0, &p) == FS_OK);
  size_t count = 0;
  EXPECT(fs_problem_point_count(p, &count) == FS_OK && count == 1);

  /* q = 0, Dirichlet: Delta is a multiple of sin(rho pi) / rho, zero at rho = 2. */
  double re = 1.0, im = 1.0;
  EXPECT(fs_charfun_eval(p, 2.0, 0.0, FS_PATH_CLOSED_FORM, &re, &im) == FS_OK);
  EXPECT(fabs(re) < 1e-12 && fabs(im) < 1e-12);
  double dre = 0.0, dim = 0.0;
  EXPECT(fs_charfun_eval(p, 0.5, 0.0, FS_PATH_DETERMINANT, &dre, &dim) == FS_OK);
  EXPECT(fs_charfun_eval(p, 0.5, 0.0, FS_PATH_CLOSED_FORM, &re, &im) == FS_OK);
  EXPECT(fabs(dre - re) < 1e-12 && fabs(dim - im) < 1e-12);

  fs_report* r = NULL;
  EXPECT(fs_spectrum(p, 5.5, 3, &r) == FS_OK);
  EXPECT(strcmp(fs_report_kind(r), "spectrum") == 0);
  EXPECT(strstr(fs_report_json(r), "\"rho_zero_count\": 10") != NULL);
  EXPECT(fs_report_outcome(r) == FS_OUTCOME_OK);
  fs_report_free(r);

  r = NULL;
  EXPECT(fs_lattice_density(p, 600, FS_LATTICE_AUTO, 50, &r) == FS_OK);
  EXPECT(strstr(fs_report_json(r), "\"exact_fraction\": \"1/3\"") != NULL);
  EXPECT(strlen(fs_report_csv(r)) > 0);
  fs_report_free(r);

  /* Error paths. */
  EXPECT(fs_spectrum(NULL, 5.5, 0, &r) == FS_ERR_NULL_ARGUMENT);
  EXPECT(strlen(fs_last_error()) > 0);
  EXPECT(fs_spectrum(p, -1.0, 0, &r) == FS_ERR_PARAMETER);
  fs_problem* bad = NULL;
  EXPECT(fs_problem_parse("{\"alpha\": 1}", &bad) == FS_ERR_CONFIG);
  EXPECT(bad == NULL);
  EXPECT(strstr(fs_last_error(), "points") != NULL);
  EXPECT(fs_problem_load("/nonexistent/problem.json", &bad) == FS_ERR_IO);
  EXPECT(fs_charfun_grid(p, "1:0:0.1", FS_PATH_CLOSED_FORM, &r) == FS_ERR_PARAMETER);

  double zr[4], zi[4];
  size_t n = 0;
  EXPECT(fs_parse_complex_list("2,1+0.5i,-3i", zr, zi, 4, &n) == FS_OK);
  EXPECT(n == 3 && zr[1] == 1.0 && zi[1] == 0.5 && zi[2] == -3.0);
  EXPECT(fs_parse_complex_list("1,2,3,4,5", zr, zi, 4, &n) == FS_ERR_PARAMETER);

  fs_isospectral_params params;
  fs_isospectral_defaults(&params);
  EXPECT(params.mode_budget == 12 && params.seed == 20240611u);

  const int only[] = {8};
  r = NULL;
  EXPECT(fs_verify(only, 1, 1.0, &r) == FS_OK);
  EXPECT(fs_report_outcome(r) == FS_OUTCOME_OK);
  EXPECT(strstr(fs_report_text(r), "PASS") != NULL);
  fs_report_free(r);

  fs_problem_free(p);
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
