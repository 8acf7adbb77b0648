#ifndef NULLKIT_H
#define NULLKIT_H

/* Generated by cbindgen from nullkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Grid classification constants returned by [`nk_grid_class`].
 */
typedef enum NkGridClass {
  NkGridClass_Division = 0,
  NkGridClass_IntegralNotDivision = 1,
  NkGridClass_AffineNotIntegral = 2,
  NkGridClass_NotAffine = 3,
} NkGridClass;

/**
 * Status codes; nonzero values match the CLI exit codes.
 */
typedef enum NkStatus {
  /**
   * Success.
   */
  NkStatus_Ok = 0,
  /**
   * A precondition does not hold (domain error).
   */
  NkStatus_Domain = 1,
  /**
   * Malformed input.
   */
  NkStatus_Parse = 2,
  /**
   * An identity guaranteed by a theorem failed; indicates a bug.
   */
  NkStatus_Theorem = 3,
  /**
   * A required pointer argument was null.
   */
  NkStatus_NullPointer = 4,
} NkStatus;

typedef struct NkGrid NkGrid;

typedef struct NkPoly NkPoly;

typedef struct NkRing NkRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last error on this thread, or null. Free with
 * [`nk_string_free`].
 */
char *nk_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by a nullkit function
 * that hands ownership to the caller, not yet freed.
 */
void nk_string_free(char *s);

/**
 * Library version as a caller-owned string.
 */
char *nk_version(void);

/**
 * Parses a ring descriptor like {"kind":"Zm","m":6}; null on error.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct NkRing *nk_ring_from_json(const char *json);

/**
 * # Safety
 * `ring` must be null or a pointer from [`nk_ring_from_json`], not yet freed.
 */
void nk_ring_free(struct NkRing *ring);

/**
 * Parses a grid {"ring":…,"axes":[[…],…]} with the given point limit
 * (0 selects the default limit); null on error.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct NkGrid *nk_grid_from_json(const char *json, uint64_t max_points);

/**
 * # Safety
 * `grid` must be null or a pointer from [`nk_grid_from_json`], not yet freed.
 */
void nk_grid_free(struct NkGrid *grid);

/**
 * # Safety
 * `grid` must be a valid handle and `out` a valid out-pointer.
 */
enum NkStatus nk_grid_class(const struct NkGrid *grid, enum NkGridClass *out);

/**
 * # Safety
 * `grid` must be a valid handle.
 */
uint64_t nk_grid_num_points(const struct NkGrid *grid);

/**
 * The grid constant N as a JSON array of {point, value}.
 *
 * # Safety
 * `grid` must be a valid handle and `out` a valid out-pointer.
 */
enum NkStatus nk_grid_n_json(const struct NkGrid *grid, char **out);

/**
 * Parses a polynomial {"nvars":…,"ring":…,"terms":[…]}; null on error.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
struct NkPoly *nk_poly_from_json(const char *json);

/**
 * # Safety
 * `poly` must be null or a pointer from a nullkit constructor, not yet freed.
 */
void nk_poly_free(struct NkPoly *poly);

/**
 * # Safety
 * `poly` must be a valid handle and `out` a valid out-pointer.
 */
enum NkStatus nk_poly_to_json(const struct NkPoly *poly, char **out);

/**
 * Parses the univariate ASCII syntax ("X^3+X+2") over a ring handle.
 *
 * # Safety
 * `ring` must be a valid handle and `text` a valid NUL-terminated string.
 */
struct NkPoly *nk_poly_parse_univariate(const struct NkRing *ring, const char *text);

/**
 * P_d by the grid sum Σ N(x)^{-1}·P(x); the result is written as a JSON
 * ring element.
 *
 * # Safety
 * `grid` and `poly` must be valid handles and `out` a valid out-pointer.
 */
enum NkStatus nk_coeff_main(const struct NkGrid *grid, const struct NkPoly *poly, char **out);

/**
 * P_e for a d-leading multiindex e of length `e_len`.
 *
 * # Safety
 * `grid` and `poly` must be valid handles, `e` must point to `e_len`
 * readable u32 values, and `out` must be a valid out-pointer.
 */
enum NkStatus nk_coeff_general(const struct NkGrid *grid,
                               const struct NkPoly *poly,
                               const uint32_t *e,
                               size_t e_len,
                               char **out);

/**
 * Interpolates a value table (JSON array of {point, value}) on a division
 * grid; returns a polynomial handle through `out`.
 *
 * # Safety
 * `grid` must be a valid handle, `values_json` a valid NUL-terminated
 * string, and `out` a valid out-pointer.
 */
enum NkStatus nk_interpolate(const struct NkGrid *grid,
                             const char *values_json,
                             struct NkPoly **out);

/**
 * Reconstructs a polynomial from its values on an integral grid.
 *
 * # Safety
 * `grid` and `poly` must be valid handles and `out` a valid out-pointer.
 */
enum NkStatus nk_invert(const struct NkGrid *grid, const struct NkPoly *poly, struct NkPoly **out);

/**
 * Runs a named JSON operation (the CLI subcommand names, e.g. "trim",
 * "certify", "permanent", "check-cd"); the result JSON is written to `out`.
 *
 * # Safety
 * `op` and `input_json` must be valid NUL-terminated strings and `out` a
 * valid out-pointer.
 */
enum NkStatus nk_run(const char *op, const char *input_json, char **out);

/**
 * Runs the embedded acceptance suite; the per-criterion reports are written
 * as JSON. Returns `Theorem` when any criterion fails.
 *
 * # Safety
 * `out` must be null or a valid out-pointer.
 */
enum NkStatus nk_selftest(char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NULLKIT_H */
