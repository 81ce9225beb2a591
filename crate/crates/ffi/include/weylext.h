#ifndef WEYLEXT_H
#define WEYLEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Source selector for matrix-based calls.
 */
#define WEYLEXT_SOURCE_CLOSED_FORM 0

#define WEYLEXT_SOURCE_ORACLE 1

/**
 * Result codes.
 */
typedef enum WeylextStatus {
  WEYLEXT_STATUS_OK = 0,
  WEYLEXT_STATUS_INVALID_PARAMS = 1,
  WEYLEXT_STATUS_NULL_POINTER = 2,
  WEYLEXT_STATUS_OUT_OF_RANGE = 3,
  /**
   * A value does not fit the requested C integer type.
   */
  WEYLEXT_STATUS_OVERFLOW = 4,
  /**
   * A computation finished but one of its checks failed.
   */
  WEYLEXT_STATUS_VERIFICATION_FAILED = 5,
  WEYLEXT_STATUS_INTERNAL = 6,
} WeylextStatus;

/**
 * Opaque presentation matrix.
 */
typedef struct WeylextMatrix WeylextMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds M(a, b) from the given source into `*out`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum WeylextStatus weylext_matrix_build(size_t a,
                                        size_t b,
                                        int32_t source_code,
                                        struct WeylextMatrix **out);

/**
 * Row count; 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t weylext_matrix_rows(const struct WeylextMatrix *m);

/**
 * Column count; 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t weylext_matrix_cols(const struct WeylextMatrix *m);

/**
 * Reads entry (row, col) into `*out`.
 *
 * # Safety
 * `m` must be null or a live handle; `out` null or valid for writes.
 */
enum WeylextStatus weylext_matrix_entry(const struct WeylextMatrix *m,
                                        size_t row,
                                        size_t col,
                                        int64_t *out);

/**
 * Serializes the matrix with its labels; free the string with
 * [`weylext_string_free`].
 *
 * # Safety
 * `m` must be null or a live handle; `out` null or valid for writes.
 */
enum WeylextStatus weylext_matrix_to_json(const struct WeylextMatrix *m, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void weylext_string_free(char *s);

/**
 * # Safety
 * `m` must be null or a handle from [`weylext_matrix_build`], not yet freed.
 */
void weylext_matrix_free(struct WeylextMatrix *m);

/**
 * Order of the computed Ext² (1 when trivial).
 *
 * # Safety
 * `order` must be null or valid for writes.
 */
enum WeylextStatus weylext_ext2_compute(size_t a, size_t b, int32_t source_code, uint64_t *order);

/**
 * Order of the predicted Ext² (1 when trivial).
 *
 * # Safety
 * `order` must be null or valid for writes.
 */
enum WeylextStatus weylext_ext2_predict(size_t a, size_t b, uint64_t *order);

/**
 * Runs the reduction and writes its trace as JSON. Returns
 * `VerificationFailed` (with the trace still written, unless `strict`)
 * when a stage check fails.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum WeylextStatus weylext_pipeline_run(size_t a, size_t b, bool strict, char **out);

/**
 * Message for the last failure on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *weylext_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLEXT_H */
