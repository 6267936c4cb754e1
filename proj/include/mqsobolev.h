/* Copyright (C) 2026 The mqsobolev Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the mqsobolev toolkit. Objects are opaque handles created
 * by *_create / *_from_* calls and released by the matching *_destroy.
 * Every fallible call returns an mqs_status; on failure the message of the
 * most recent error on the calling thread is available from mqs_last_error.
 * Reports are JSON documents; strings returned through char** outputs are
 * owned by the caller and released with mqs_string_free.
 */
#ifndef MQSOBOLEV_H
#define MQSOBOLEV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MQS_BUILDING_LIBRARY)
#define MQS_API __declspec(dllexport)
#else
#define MQS_API __declspec(dllimport)
#endif
#else
#define MQS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mqs_status {
  MQS_OK = 0,
  MQS_ERR_INVALID_ARGUMENT = 1,
  MQS_ERR_UNSUPPORTED_DIMENSION = 2,
  MQS_ERR_SIZE_MISMATCH = 3,
  MQS_ERR_EMPTY_SET = 4,
  MQS_ERR_PRECONDITION = 5,
  MQS_ERR_IO = 6,
  MQS_ERR_RESOURCE = 7,
  MQS_ERR_NULL_POINTER = 8,
  MQS_ERR_INTERNAL = 99
} mqs_status;

typedef struct mqs_grid mqs_grid;
typedef struct mqs_function mqs_function;
typedef struct mqs_field mqs_field;
typedef struct mqs_space mqs_space;
typedef struct mqs_report mqs_report;

typedef enum mqs_maximal_kind { MQS_MAXIMAL_CENTERED = 0, MQS_MAXIMAL_UNCENTERED = 1 } mqs_maximal_kind;

typedef struct mqs_pair_options {
  uint64_t budget;   /* pairs examined before stratified thinning; default 10^7 */
  uint64_t seed;     /* sampling seed; default 0 */
  int interior_only; /* keep pairs whose balls stay in the grid */
  double kappa;      /* tolerance kappa h / |x - y|; default 4 */
} mqs_pair_options;

MQS_API const char* mqs_version(void);
MQS_API const char* mqs_last_error(void);
MQS_API void mqs_string_free(char* s);
MQS_API void mqs_pair_options_default(mqs_pair_options* opt);

/* Grids: dim 1 or 2, origin and extent have dim entries. */
MQS_API mqs_status mqs_grid_create(int dim, const double* origin, const double* extent, double h, mqs_grid** out);
MQS_API void mqs_grid_destroy(mqs_grid* g);
MQS_API size_t mqs_grid_size(const mqs_grid* g);
MQS_API int mqs_grid_dim(const mqs_grid* g);
MQS_API mqs_status mqs_grid_point(const mqs_grid* g, size_t index, double* coords);

/* Functions: a corpus spec ("poly:0,1", "cusp:0.5", "sin:1", ...) sampled on a
 * grid, or raw values (no derivatives available). */
MQS_API mqs_status mqs_function_create(const char* spec, const mqs_grid* g, mqs_function** out);
MQS_API mqs_status mqs_function_from_values(const mqs_grid* g, const double* values, size_t n, mqs_function** out);
MQS_API void mqs_function_destroy(mqs_function* f);
MQS_API mqs_status mqs_function_values(const mqs_function* f, const double** values, size_t* n);
MQS_API mqs_status mqs_function_csv(const mqs_function* f, char** csv);

/* Fields. cap <= 0 or infinite means no radius cap. */
MQS_API mqs_status mqs_field_mq(const mqs_function* f, double cap, mqs_field** out);
MQS_API mqs_status mqs_field_maximal(const mqs_function* f, mqs_maximal_kind kind, double cap, mqs_field** out);
MQS_API mqs_status mqs_field_mq_m(const mqs_function* f, int m, double cap, mqs_field** out);
MQS_API void mqs_field_destroy(mqs_field* g);
MQS_API mqs_status mqs_field_values(const mqs_field* g, const double** values, size_t* n);
MQS_API mqs_status mqs_field_csv(const mqs_field* g, char** csv);
MQS_API mqs_status mqs_field_json(const mqs_field* g, char** json);

/* Reports. */
MQS_API const char* mqs_report_json(const mqs_report* r);
MQS_API int mqs_report_pass(const mqs_report* r);
MQS_API void mqs_report_destroy(mqs_report* r);

/* Verifiers. c <= 0 selects the lens constant c(n). NULL options select defaults. */
MQS_API mqs_status mqs_verify_pointwise(const mqs_function* f, double cap, double c, const mqs_pair_options* opt,
                                        mqs_report** out);
MQS_API mqs_status mqs_verify_chain(const mqs_function* f, const mqs_pair_options* opt, mqs_report** out);
MQS_API mqs_status mqs_verify_grad_domination(const mqs_function* f, double kappa, mqs_report** out);
MQS_API mqs_status mqs_verify_sandwich(const mqs_function* f, mqs_report** out);
MQS_API mqs_status mqs_verify_poincare(const mqs_function* f, double radius, double p, mqs_report** out);
MQS_API mqs_status mqs_verify_holder(const mqs_function* f, double p, const mqs_pair_options* opt, mqs_report** out);
MQS_API mqs_status mqs_verify_divided(const mqs_function* f, int m, double cap, double constant,
                                      const mqs_pair_options* opt, mqs_report** out);
MQS_API mqs_status mqs_verify_lemma2(const mqs_function* f, uint64_t triples, const mqs_pair_options* opt,
                                     mqs_report** out);
MQS_API mqs_status mqs_verify_jets(const mqs_function* f, int order, uint64_t tuples, uint64_t seed, mqs_report** out);
MQS_API mqs_status mqs_verify_equidistant(const mqs_function* f, double x, double h, int m, mqs_report** out);
MQS_API mqs_status mqs_verify_dd_limit(const mqs_function* f, double x, int m, int levels, mqs_report** out);

/* Luzin pipeline over an increasing ladder of levels. */
MQS_API mqs_status mqs_luzin(const mqs_function* f, const double* ladder, size_t n, double cap, mqs_report** out);

MQS_API mqs_status mqs_experiment_conjecture31(const mqs_function* f, int m, int samples, uint64_t seed,
                                               mqs_report** out);
MQS_API mqs_status mqs_lens_constant(int dim, double* out);

/* Finite metric measure spaces. */
MQS_API mqs_status mqs_space_from_json(const char* spec, mqs_space** out);
MQS_API mqs_status mqs_space_from_csv(const char* matrix, const double* weights, size_t n_weights, mqs_space** out);
MQS_API void mqs_space_destroy(mqs_space* s);
MQS_API size_t mqs_space_size(const mqs_space* s);
MQS_API mqs_status mqs_mms_mq(const mqs_space* s, const double* f, size_t n, double cap, double* out);
MQS_API mqs_status mqs_mms_doubling(const mqs_space* s, double* out);
MQS_API mqs_status mqs_mms_overlap(const mqs_space* s, int with_table, mqs_report** out);
/* g == NULL uses the MQ field of f; C <= 0 uses the measured overlap constant. */
MQS_API mqs_status mqs_mms_verify(const mqs_space* s, const double* f, const double* g, size_t n, double C,
                                  mqs_report** out);

#ifdef __cplusplus
}
#endif

#endif /* MQSOBOLEV_H */
