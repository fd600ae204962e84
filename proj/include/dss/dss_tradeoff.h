/*
 * Storage / repair-bandwidth tradeoff calculator for regenerating codes in
 * symmetric, static-cost and two-rack distributed storage systems.
 *
 * All quantities cross this interface as exact rational strings ("p/q",
 * integers, or decimals such as "0.25"). Returned strings are allocated by
 * the library and released with dss_string_free. Functions returning a
 * status other than DSS_OK leave a message in dss_last_error() for the
 * calling thread.
 */
#ifndef DSS_TRADEOFF_H
#define DSS_TRADEOFF_H

#include <stddef.h>

#if defined(DSS_BUILDING_LIBRARY)
#define DSS_API __attribute__((visibility("default")))
#else
#define DSS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dss_status {
  DSS_OK = 0,
  DSS_ERR_USAGE = 1,         /* malformed argument */
  DSS_ERR_CONFIG = 2,        /* configuration invariant violated */
  DSS_ERR_CERTIFICATION = 3, /* oracle rejected the curve */
  DSS_ERR_BUDGET = 4,        /* oracle search space over budget */
  DSS_ERR_INFEASIBLE = 5,    /* query outside the curve's domain */
  DSS_ERR_INTERNAL = 6
} dss_status;

typedef enum dss_model {
  DSS_MODEL_SYMMETRIC = 0,
  DSS_MODEL_STATIC = 1,
  DSS_MODEL_TWORACK = 2,
  DSS_MODEL_NONHOMOG = 3
} dss_model;

typedef enum dss_format {
  DSS_FORMAT_CSV = 0,
  DSS_FORMAT_JSON = 1,
  DSS_FORMAT_GNUPLOT = 2,
  DSS_FORMAT_TEXT = 3
} dss_format;

typedef enum dss_point { DSS_POINT_MSR = 0, DSS_POINT_MBR = 1 } dss_point;

typedef struct dss_config dss_config;
typedef struct dss_curve dss_curve;

/* Helper counts set to -1 are derived: d1c = d - d1e, d2c = d - d2e. For the
 * static model a missing rack-2 split copies rack 1; the symmetric model uses
 * d helpers of one kind. */
typedef struct dss_params {
  dss_model model;
  const char* file_size; /* NULL means 1 */
  int k;
  int n1;
  int n2;
  int d;
  int d1c;
  int d1e;
  int d2c;
  int d2e;
  const char* tau; /* NULL means 1 */
} dss_params;

DSS_API void dss_params_init(dss_params* params);
DSS_API const char* dss_model_name(dss_model model);
DSS_API dss_status dss_parse_model(const char* name, dss_model* out);
DSS_API dss_status dss_parse_format(const char* name, dss_format* out);

DSS_API dss_status dss_config_create(const dss_params* params, dss_config** out);
DSS_API void dss_config_destroy(dss_config* config);
/* Copy of `config` under another model, validated again. */
DSS_API dss_status dss_config_with_model(const dss_config* config, dss_model model, dss_config** out);
/* 1 when validation exchanged the rack labels. */
DSS_API int dss_config_racks_swapped(const dss_config* config);

DSS_API dss_status dss_curve_create(const dss_config* config, dss_curve** out);
DSS_API void dss_curve_destroy(dss_curve* curve);
DSS_API size_t dss_curve_segment_count(const dss_curve* curve);
DSS_API int dss_curve_deleted_count(const dss_curve* curve);
DSS_API int dss_curve_feasible(const dss_curve* curve);
DSS_API dss_status dss_curve_point(const dss_curve* curve, dss_point which, char** beta_e, char** alpha);
DSS_API dss_status dss_curve_alpha_at(const dss_curve* curve, const char* beta_e, char** alpha);

typedef struct dss_render_options {
  int samples;           /* interior gnuplot points per segment */
  const char* beta_max;  /* gnuplot extent of the flat segment; NULL for default */
  int color;             /* ANSI highlighting in text output */
  unsigned threads;
} dss_render_options;

DSS_API void dss_render_options_init(dss_render_options* options);

DSS_API dss_status dss_render_curve(const dss_curve* curve, dss_format format,
                                    const dss_render_options* options, char** out);
DSS_API dss_status dss_render_point(const dss_curve* curve, dss_point which, dss_format format,
                                    char** out);
/* Both configs must agree on everything but the model. */
DSS_API dss_status dss_render_compare(const dss_config* a, const dss_config* b, dss_format format,
                                      const dss_render_options* options, char** out);
/* beta_e NULL means the minimum-bandwidth point. */
DSS_API dss_status dss_render_cost(const dss_curve* curve, const char* cheap_cost,
                                   const char* expensive_cost, const char* beta_e, dss_format format,
                                   char** out);

typedef struct dss_verify_options {
  int samples;
  int max_failures;
  unsigned long long budget;
  const char* epsilon;     /* relative tightness probe, default "1/1000" */
  const char* perturb;     /* curve scale factor, default "1" */
  unsigned threads;
  int color;
} dss_verify_options;

DSS_API void dss_verify_options_init(dss_verify_options* options);
/* Returns DSS_ERR_CERTIFICATION with the report in *out when a check fails. */
DSS_API dss_status dss_verify(const dss_curve* curve, const dss_verify_options* options,
                              dss_format format, char** out);

DSS_API void dss_string_free(char* s);
DSS_API const char* dss_last_error(void);
DSS_API const char* dss_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DSS_TRADEOFF_H */
