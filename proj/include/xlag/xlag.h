#ifndef XLAG_XLAG_H
#define XLAG_XLAG_H

/*
 * C interface to the extended truncated Calogero-Sutherland library.
 *
 * Every fallible call returns an xlag_status. On failure the message is
 * available from xlag_last_error() on the calling thread until the next call
 * on that thread. Strings returned through char** are owned by the caller and
 * released with xlag_string_free. Handles are immutable after creation and may
 * be shared between threads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(XLAG_BUILDING_LIBRARY)
#define XLAG_API __attribute__((visibility("default")))
#else
#define XLAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xlag_status {
  XLAG_OK = 0,
  XLAG_ERR_INVALID_ARGUMENT = 1,
  XLAG_ERR_DOMAIN = 2,
  XLAG_ERR_NUMERIC = 3,
  XLAG_ERR_IO = 4,
  XLAG_ERR_INTERNAL = 5
} xlag_status;

typedef struct xlag_params {
  int n_particles;
  double lambda;
  int range;
  double omega;
  int degree_s;
  int ext_m;
} xlag_params;

typedef struct xlag_derived {
  double tau;
  double alpha;
  int pair_count;
} xlag_derived;

typedef struct xlag_ext_constants {
  double alpha1;
  double alpha2;
  double beta1;
  double beta2;
} xlag_ext_constants;

typedef struct xlag_model xlag_model;
typedef struct xlag_report xlag_report;

XLAG_API const char* xlag_last_error(void);
XLAG_API const char* xlag_status_string(xlag_status status);
XLAG_API void xlag_string_free(char* s);

/* special functions */
XLAG_API xlag_status xlag_laguerre(int n, double alpha, double x, double* out);
XLAG_API xlag_status xlag_laguerre_derivative(int n, double alpha, double x, double* out);
XLAG_API xlag_status xlag_x1_laguerre(int n_hat, double alpha, double g, double* out);
XLAG_API xlag_status xlag_xm_laguerre(int n, int m, double alpha, double g, double* out);
XLAG_API xlag_status xlag_xm_denominator(int m, double alpha, double g, double* out);

/* model */
XLAG_API xlag_status xlag_model_create(const xlag_params* params, xlag_model** out);
XLAG_API xlag_status xlag_model_from_json(const char* text, xlag_model** out);
XLAG_API void xlag_model_destroy(xlag_model* model);
XLAG_API xlag_status xlag_model_params(const xlag_model* model, xlag_params* out);
XLAG_API xlag_status xlag_model_derived(const xlag_model* model, xlag_derived* out);
XLAG_API xlag_status xlag_model_to_json(const xlag_model* model, char** out);

XLAG_API xlag_status xlag_energy_level(const xlag_model* model, int n, double* out);
XLAG_API xlag_status xlag_ext_constants_get(const xlag_model* model, xlag_ext_constants* out);
XLAG_API xlag_status xlag_v_new(const xlag_model* model, double rho, double* out);
XLAG_API xlag_status xlag_v_eff(const xlag_model* model, double rho, int extended, double* out);
XLAG_API xlag_status xlag_v_interaction(const xlag_model* model, const double* x, size_t count, double* out);

/* wavefunctions */
XLAG_API xlag_status xlag_radial_eigenfunction(const xlag_model* model, int n, double rho, double* out);
XLAG_API xlag_status xlag_jastrow(const xlag_model* model, const double* x, size_t count, double* out);
XLAG_API xlag_status xlag_groundstate(const xlag_model* model, const double* x, size_t count, double* out);
XLAG_API xlag_status xlag_local_energy(const xlag_model* model, const double* x, size_t count, double step,
                                       double* out);

/* text and tables; format_json != 0 selects JSON */
XLAG_API xlag_status xlag_params_report(const xlag_model* model, int format_json, char** out);

/* what: "potential", "wavefunction" or "spectrum". rho_max <= 0 and points <= 0 select defaults;
 * `level` applies to wavefunction tables, `levels` to spectrum tables. */
XLAG_API xlag_status xlag_table(const xlag_model* model, const char* what, double rho_max, int points, int level,
                                int levels, int threads, char** out);

XLAG_API xlag_status xlag_polynomial_table(int max_n, int m, double alpha, double g_max, int points, char** out);

/* verification */
typedef struct xlag_verify_options {
  int levels;       /* levels per suite, default 5 */
  double perturb;   /* factor on the extension term in every numerical check, default 1 */
  uint64_t seed;    /* local-energy sampler seed, default 1 */
  int samples;      /* local-energy configurations, default 200 */
  int threads;      /* default 1 */
  int points;       /* radial solver unknowns on the coarse grid, default 20001 */
} xlag_verify_options;

XLAG_API void xlag_verify_options_init(xlag_verify_options* options);

/* suite: "residual", "spectrum", "ortho", "consistency", "local-energy" or "all" */
XLAG_API xlag_status xlag_verify(const xlag_model* model, const char* suite, const xlag_verify_options* options,
                                 xlag_report** out);
XLAG_API int xlag_report_passed(const xlag_report* report);
XLAG_API xlag_status xlag_report_json(const xlag_report* report, char** out);
XLAG_API xlag_status xlag_report_text(const xlag_report* report, char** out);
XLAG_API void xlag_report_destroy(xlag_report* report);

/* local-energy constancy scan; writes the statistics as JSON and the pass flag */
XLAG_API xlag_status xlag_constancy_scan(const xlag_model* model, int samples, uint64_t seed, int threads,
                                         char** json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
