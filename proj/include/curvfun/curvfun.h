#ifndef CURVFUN_H
#define CURVFUN_H

/* C interface to the curvfun engine. All objects are opaque handles; every
 * call that can fail returns a cf_status and leaves a message retrievable
 * with cf_last_error() on the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CF_API __declspec(dllexport)
#else
#define CF_API __attribute__((visibility("default")))
#endif

typedef enum {
  CF_OK = 0,
  CF_ERR_CONFIG = 2,
  CF_ERR_NUMERIC = 3,
  CF_ERR_REPRODUCE = 4,
  CF_ERR_INTERNAL = 5
} cf_status;

typedef struct cf_config cf_config;
typedef struct cf_report cf_report;

CF_API const char* cf_version(void);
/* Message for the last failing call on this thread; empty if none. */
CF_API const char* cf_last_error(void);

CF_API cf_config* cf_config_new(void);
CF_API void cf_config_free(cf_config* cfg);

/* Keys: manifold, spec_file, spec_json, param ("k=v", may repeat),
 * functional (gamma_d|gamma_mc|gbc|hilbert|volume),
 * frame (coordinate|rotated|haar), rotate_plane ("a,b", 1-based),
 * rotate_angle, grid ("n" or "n1,n2,..."), samples, seed, workers,
 * timing (0|1), angles (frame sweep count), case (reproduce case). Values
 * are checked for syntax here and for consistency by cf_config_validate. */
CF_API cf_status cf_config_set(cf_config* cfg, const char* key, const char* value);
/* Resolves the manifold and checks every field against it. */
CF_API cf_status cf_config_validate(cf_config* cfg);

/* Each run validates first. On CF_ERR_NUMERIC *out (if non-null) receives
 * an error report carrying the failing point's coordinates. */
CF_API cf_status cf_compute(cf_config* cfg, cf_report** out);
CF_API cf_status cf_frame_sweep(cf_config* cfg, cf_report** out);
/* Returns CF_ERR_REPRODUCE, with the full report in *out, if any check that
 * is not a documented discrepancy fails. */
CF_API cf_status cf_reproduce(cf_config* cfg, cf_report** out);
/* Report listing the named manifolds and reproduce cases. */
CF_API cf_status cf_catalog(cf_report** out);

/* Rendering in json, csv or text; the string is owned by the report and
 * stays valid until the next render call or cf_report_free. */
CF_API const char* cf_report_render(cf_report* report, const char* format);
/* Main value and error estimate of a compute report. */
CF_API cf_status cf_report_value(const cf_report* report, double* value, double* error_estimate);
CF_API void cf_report_free(cf_report* report);

/* Pointwise functionals. k is an n x n row-major sectional matrix; r is a
 * row-major n^4 Riemann tensor in an orthonormal frame. */
CF_API cf_status cf_k_discrete(const double* k, int n, double* out);
CF_API cf_status cf_k_gbc(const double* r, int n, double* raw, double* normalized);

#ifdef __cplusplus
}
#endif

#endif
