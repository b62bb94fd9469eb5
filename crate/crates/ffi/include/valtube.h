#ifndef VALTUBE_H
#define VALTUBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VtStatus {
  VT_STATUS_OK = 0,
  VT_STATUS_NULL_POINTER = 1,
  VT_STATUS_INVALID_ARGUMENT = 2,
  VT_STATUS_INDEX_OUT_OF_RANGE = 3,
  VT_STATUS_UNSUPPORTED = 4,
  VT_STATUS_DIVISION_BY_ZERO = 5,
  VT_STATUS_VERIFICATION_FAILED = 6,
  VT_STATUS_INTERNAL = 7,
} VtStatus;

// An operator matrix over a fixed basis.
typedef struct VtMatrix VtMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Tube operator of a curved space in the basis named `family_name`
// (e.g. `"C-SigmaLam"`, `"R-Tau"`).
//
// # Safety
// `family_name` must be a nul-terminated string and `out` a valid pointer.
enum VtStatus vt_tube(const char *family_name, uint32_t ambient_dim, struct VtMatrix **out);

// Derivative operator of a curved space in the basis named `family_name`.
//
// # Safety
// As for `vt_tube`.
enum VtStatus vt_derivative(const char *family_name, uint32_t ambient_dim, struct VtMatrix **out);

// Tube of the complex space form of complex dimension `n`, σ^λ basis.
//
// # Safety
// `out` must be a valid pointer.
enum VtStatus vt_tube_complex(uint32_t n, struct VtMatrix **out);

// Tube of the real space form of dimension `d`, σ^λ basis.
//
// # Safety
// `out` must be a valid pointer.
enum VtStatus vt_tube_real(uint32_t d, struct VtMatrix **out);

// # Safety
// `out` must be a valid pointer.
enum VtStatus vt_derivative_complex(uint32_t n, struct VtMatrix **out);

// # Safety
// `out` must be a valid pointer.
enum VtStatus vt_derivative_real(uint32_t d, struct VtMatrix **out);

// Number of rows (codomain dimension) and columns (domain dimension).
// Rows and columns follow the basis label order of the JSON document.
//
// # Safety
// `m` must come from this library; `rows` and `cols` must be valid pointers.
enum VtStatus vt_matrix_dim(const struct VtMatrix *m, size_t *rows, size_t *cols);

// Canonical JSON of the matrix; release with `vt_string_free`.
//
// # Safety
// `m` must come from this library and `out` must be a valid pointer.
enum VtStatus vt_matrix_to_json(const struct VtMatrix *m, char **out);

// The matrix as a LaTeX `align*` block; release with `vt_string_free`.
//
// # Safety
// As for `vt_matrix_to_json`.
enum VtStatus vt_matrix_to_latex(const struct VtMatrix *m, char **out);

// Entry (`row`, `col`) at λ = `lambda_num/lambda_den` and decimal `t`,
// printed with `digits` significant digits. Derivative entries ignore `t`.
//
// # Safety
// `m` must come from this library, `t` a nul-terminated string, `out` valid.
enum VtStatus vt_matrix_eval_entry(const struct VtMatrix *m,
                                   size_t row,
                                   size_t col,
                                   int64_t lambda_num,
                                   int64_t lambda_den,
                                   const char *t,
                                   uint32_t digits,
                                   char **out);

// Runs the invariant suite; `failures` (if non-null) receives the number of
// failing checks. Returns `VerificationFailed` when any check fails.
//
// # Safety
// `failures` must be null or a valid pointer.
enum VtStatus vt_verify_all(uint32_t *failures);

// Message for the last failed call on this thread, or null. The pointer stays
// valid until the next call into the library on the same thread.
const char *vt_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void vt_string_free(char *s);

// # Safety
// `m` must be null or a handle returned by this library, freed once.
void vt_matrix_free(struct VtMatrix *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VALTUBE_H */
