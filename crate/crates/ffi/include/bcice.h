#ifndef BCICE_H
#define BCICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_UTF8 = 2,
  BC_STATUS_PARSE = 3,
  BC_STATUS_INVALID_INPUT = 4,
  BC_STATUS_POLE_HIT = 5,
  BC_STATUS_ZERO_BASE = 6,
  BC_STATUS_REGIME_MISMATCH = 7,
  BC_STATUS_MISSING_PARAM = 8,
  BC_STATUS_NO_SOLUTION_FOUND = 9,
  BC_STATUS_CONSERVATION_VIOLATED = 10,
  BC_STATUS_DIVISION_BY_ZERO_RHS = 11,
  BC_STATUS_PANIC = 12,
} BcStatus;

/**
 * Opaque per-pair bend weights.
 */
typedef struct BcBendWeights BcBendWeights;

/**
 * Opaque exact point `(q, x_1, ..., x_r)`.
 */
typedef struct BcPoint BcPoint;

/**
 * Parses a JSON array of `{"A","B","C","D"}` rows.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BcStatus bc_bend_weights_from_json(const char *json, struct BcBendWeights **out);

/**
 * `name` is `wzj` or `allones`, repeated over `rank` pairs.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum BcStatus bc_bend_weights_builtin(const char *name, size_t rank, struct BcBendWeights **out);

/**
 * # Safety
 * `bw` must come from a `bc_bend_weights_*` constructor or be null.
 */
void bc_bend_weights_free(struct BcBendWeights *bw);

/**
 * Parses `{"q": "p/q", "xs": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BcStatus bc_point_from_json(const char *json, struct BcPoint **out);

/**
 * Deterministic generic point of the given rank.
 *
 * # Safety
 * `out` must be writable.
 */
enum BcStatus bc_point_random(size_t rank, uint64_t seed, struct BcPoint **out);

/**
 * # Safety
 * `pt` must be a live handle; `out` must be writable.
 */
enum BcStatus bc_point_to_json(const struct BcPoint *pt, char **out);

/**
 * # Safety
 * `pt` must come from a `bc_point_*` constructor or be null.
 */
void bc_point_free(struct BcPoint *pt);

/**
 * Type A partition function for the partition `parts[0..len]`.
 *
 * # Safety
 * `parts` must point to `len` values; handles must be live; `out` writable.
 */
enum BcStatus bc_partition_function_a(const uint32_t *parts,
                                      size_t len,
                                      const struct BcPoint *pt,
                                      char **out);

/**
 * Type B/C partition function by state enumeration.
 *
 * # Safety
 * `parts` must point to `len` values; handles must be live; `out` writable.
 */
enum BcStatus bc_partition_function_bc(const uint32_t *parts,
                                       size_t len,
                                       const struct BcBendWeights *bw,
                                       const struct BcPoint *pt,
                                       char **out);

/**
 * Type B/C partition function from column transfer operators; nonzero
 * `twisted` uses the conjugated columns and `<K|F^{-1}`.
 *
 * # Safety
 * `parts` must point to `len` values; handles must be live; `out` writable.
 */
enum BcStatus bc_braket(const uint32_t *parts,
                        size_t len,
                        const struct BcBendWeights *bw,
                        const struct BcPoint *pt,
                        int twisted,
                        char **out);

/**
 * Sets `*solvable` to 1 or 0; writes the JSON report to `report` unless
 * it is null.
 *
 * # Safety
 * `bw` must be live; `solvable` writable; `report` writable or null.
 */
enum BcStatus bc_check_solvable(const struct BcBendWeights *bw,
                                size_t rank,
                                uint64_t seed,
                                int *solvable,
                                char **report);

/**
 * JSON classification against the solvable catalogs.
 *
 * # Safety
 * `bw` must be live; `out` writable.
 */
enum BcStatus bc_classify(const struct BcBendWeights *bw, size_t rank, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void bc_string_free(char *s);

/**
 * Message of the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *bc_last_error_message(void);

#endif /* BCICE_H */
