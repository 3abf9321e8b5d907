// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

/*
 * C interface to ellforge.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns an ef_status; on failure ef_last_error() describes the
 * problem for the calling thread. Strings returned through char** are
 * allocated by the library and released with ef_string_free.
 */

#ifndef ELLFORGE_H_
#define ELLFORGE_H_

#include <stdint.h>

#if defined(_WIN32)
#define EF_API __declspec(dllexport)
#else
#define EF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EF_OK = 0,
  EF_ERR_INPUT = 1,
  EF_ERR_DOMAIN = 2,
  EF_ERR_ORIENTATION = 3,
  EF_ERR_NUMERICAL = 4,
  EF_ERR_POLE = 5,
  EF_ERR_NEAR_ZERO = 6,
  EF_ERR_MODEL = 7,
  EF_ERR_LOAD = 8,
  EF_ERR_RECENTER = 9,
  EF_ERR_INTERNAL = 10,
  EF_ERR_UNKNOWN = 11
} ef_status;

typedef struct ef_series ef_series;   /* rational Laurent series in one variable */
typedef struct ef_lattice ef_lattice; /* based oriented lattice (l1, l2) */

EF_API const char* ef_version(void);
EF_API const char* ef_status_name(ef_status s);
/* Message of the last failed call on this thread; "" if none. */
EF_API const char* ef_last_error(void);
EF_API void ef_string_free(char* s);

/* q-expansions; weight-k Eisenstein series and the discriminant. */
EF_API ef_status ef_series_eisenstein(int k, int order, ef_series** out);
EF_API ef_status ef_series_delta(int order, ef_series** out);
/* Canonical series encoding {"var","min","trunc","coeffs"}. */
EF_API ef_status ef_series_from_json(const char* json, ef_series** out);
EF_API ef_status ef_series_to_json(const ef_series* s, char** out);
/* Coefficient of var^e as "p/q"; exponents past the truncation are domain errors. */
EF_API ef_status ef_series_coeff(const ef_series* s, int e, char** out);
EF_API ef_status ef_series_mul(const ef_series* a, const ef_series* b, ef_series** out);
EF_API void ef_series_free(ef_series* s);

EF_API ef_status ef_lattice_from_tau(double tau_re, double tau_im, ef_lattice** out);
EF_API ef_status ef_lattice_new(double l1_re, double l1_im, double l2_re, double l2_im, ef_lattice** out);
/* G_k evaluated on the lattice from its q-expansion to the given order. */
EF_API ef_status ef_lattice_eisenstein(const ef_lattice* lat, int k, int order, double* re, double* im);
/* sigma(z) including the lambda2 prefactor. */
EF_API ef_status ef_lattice_sigma(const ef_lattice* lat, double z_re, double z_im, double* re, double* im);
EF_API void ef_lattice_free(ef_lattice* lat);

/*
 * Renders a module command (modforms, sigma, fgl, fermion, euler, derham,
 * sheaf, sectors) with arguments given as a JSON object. json != 0 selects
 * the JSON encoding. passed may be NULL; it is set to 0 when the command is
 * a check that failed.
 */
EF_API ef_status ef_emit(const char* command, const char* args_json, int json, char** out, int* passed);

/* Newline-separated "name<TAB>description" lines. */
EF_API ef_status ef_check_list(char** out);
/* tol <= 0 keeps the suite default. */
EF_API ef_status ef_check_run(const char* suite, uint64_t seed, double tol, int json, int timing, int* passed,
                              char** report);

#ifdef __cplusplus
}
#endif

#endif  // ELLFORGE_H_
