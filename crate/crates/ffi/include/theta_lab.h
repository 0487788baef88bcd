#ifndef THETA_LAB_H
#define THETA_LAB_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ThetaLabStatus {
  THETA_LAB_STATUS_OK = 0,
  THETA_LAB_STATUS_NULL_POINTER = 1,
  THETA_LAB_STATUS_PARSE = 2,
  THETA_LAB_STATUS_INVALID_ARGUMENT = 3,
  THETA_LAB_STATUS_NOT_MEMBER = 4,
  THETA_LAB_STATUS_TAU_TOO_LOW = 5,
  THETA_LAB_STATUS_NO_SNAP = 6,
  THETA_LAB_STATUS_BRANCH_RESOLUTION = 7,
  THETA_LAB_STATUS_NON_UNIQUE = 8,
  THETA_LAB_STATUS_CONVENTION_FLIP = 9,
  THETA_LAB_STATUS_BUFFER_TOO_SMALL = 10,
  THETA_LAB_STATUS_PANIC = 11,
} ThetaLabStatus;

// A dense complex matrix.
typedef struct ThetaLabMatrix ThetaLabMatrix;

// A metaplectic element `(γ, ±√(cτ+d))`.
typedef struct ThetaLabMp ThetaLabMp;

// Holds the direct/conjugate convention fixed by the first decisive check.
typedef struct ThetaLabRegistry ThetaLabRegistry;

typedef struct ThetaLabComplex {
  double re;
  double im;
} ThetaLabComplex;

typedef struct ThetaLabTransformReport {
  double residual;
  double residual_direct;
  double residual_conjugate;
  // 0 direct, 1 conjugate
  int convention;
  bool pass;
} ThetaLabTransformReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
const char *theta_lab_last_error(void);

// # Safety
// `s` must come from this library, or be null.
void theta_lab_string_free(char *s);

// Parses `"a,b,c,d:+"` or `"a,b,c,d:-"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum ThetaLabStatus theta_lab_mp_parse(const char *text, struct ThetaLabMp **out);

// # Safety
// `p` must come from this library, or be null.
void theta_lab_mp_free(struct ThetaLabMp *p);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum ThetaLabStatus theta_lab_mp_mul(const struct ThetaLabMp *a,
                                     const struct ThetaLabMp *b,
                                     struct ThetaLabMp **out);

// `"(a,b,c,d:±)"`, released with `theta_lab_string_free`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum ThetaLabStatus theta_lab_mp_to_string(const struct ThetaLabMp *p, char **out);

// `ρ_m(p)`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum ThetaLabStatus theta_lab_weil_rep(uint32_t m,
                                       const struct ThetaLabMp *p,
                                       struct ThetaLabMatrix **out);

// # Safety
// `mat` must be a live handle, or null (then 0).
size_t theta_lab_matrix_rows(const struct ThetaLabMatrix *mat);

// # Safety
// `mat` must be a live handle, or null (then 0).
size_t theta_lab_matrix_cols(const struct ThetaLabMatrix *mat);

// # Safety
// `mat` must be a live handle; `out` must be writable.
enum ThetaLabStatus theta_lab_matrix_get(const struct ThetaLabMatrix *mat,
                                         size_t row,
                                         size_t col,
                                         struct ThetaLabComplex *out);

// # Safety
// `mat` must come from this library, or be null.
void theta_lab_matrix_free(struct ThetaLabMatrix *mat);

// Writes the `m` theta constants at `tau` into `values[0..m]`.
//
// # Safety
// `values` must hold `len` elements; `err_bound` may be null.
enum ThetaLabStatus theta_lab_theta_constants(uint32_t m,
                                              struct ThetaLabComplex tau,
                                              double tol,
                                              struct ThetaLabComplex *values,
                                              size_t len,
                                              double *err_bound);

struct ThetaLabRegistry *theta_lab_registry_new(void);

// # Safety
// `r` must come from this library, or be null.
void theta_lab_registry_free(struct ThetaLabRegistry *r);

// `θ(γτ)` against `φ(τ)ρ_m(p)θ(τ)`; the registry carries the run's convention.
//
// # Safety
// `p`, `registry` must be live handles; `out` must be writable.
enum ThetaLabStatus theta_lab_verify_transformation(uint32_t m,
                                                    const struct ThetaLabMp *p,
                                                    struct ThetaLabComplex tau,
                                                    double tol,
                                                    const struct ThetaLabRegistry *registry,
                                                    struct ThetaLabTransformReport *out);

// `λ(γ) = e^{2πi num/den}` for `γ ∈ Sp(2g, ℤ/4)` given by `4g²` entries;
// `parity` is 0 for even, 1 for odd.
//
// # Safety
// `entries` must hold `len` values; `num`, `den` must be writable.
enum ThetaLabStatus theta_lab_discriminant(int parity,
                                           const int64_t *entries,
                                           size_t len,
                                           uint64_t *num,
                                           uint64_t *den);

// Membership of `(a,b;c,d)` in the named group (`gamma`, `gamma0`,
// `gamma-m-2m`, `theta12`); `param` is ignored for `theta12`.
//
// # Safety
// `group` must be a NUL-terminated string; `out` must be writable.
enum ThetaLabStatus theta_lab_congruence_member(const char *group,
                                                uint64_t param,
                                                int64_t a,
                                                int64_t b,
                                                int64_t c,
                                                int64_t d,
                                                bool *out);

// Runs the verification battery (`level` 0 quick, 1 full) and returns the
// JSON report through `json`.
//
// # Safety
// `json` and `all_pass` must be writable.
enum ThetaLabStatus theta_lab_run_suite(int level, uint64_t seed, char **json, bool *all_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETA_LAB_H */
