#ifndef KNESER_H
#define KNESER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KneserStatus {
  KNESER_STATUS_OK = 0,
  KNESER_STATUS_NULL_POINTER = 1,
  KNESER_STATUS_PARAMETER = 2,
  KNESER_STATUS_CAPACITY = 3,
  KNESER_STATUS_UNDEFINED = 4,
  KNESER_STATUS_INVALID_FAMILY = 5,
  KNESER_STATUS_INTERNAL = 6,
  KNESER_STATUS_BUFFER_TOO_SMALL = 7,
  KNESER_STATUS_PANIC = 8,
} KneserStatus;

typedef enum KneserInvariant {
  KNESER_INVARIANT_GAMMA_K = 0,
  KNESER_INVARIANT_GAMMA_XK = 1,
  KNESER_INVARIANT_GAMMA_XKT = 2,
  KNESER_INVARIANT_TWO_PACKING = 3,
} KneserInvariant;

typedef enum KneserSolveStatus {
  KNESER_SOLVE_STATUS_OPTIMAL = 0,
  KNESER_SOLVE_STATUS_BOUNDS = 1,
  KNESER_SOLVE_STATUS_UNDEFINED = 2,
} KneserSolveStatus;

/**
 * Opaque family of vertices of K(n,r).
 */
typedef struct KneserFamily KneserFamily;

/**
 * Result of [`kneser_verify`].
 */
typedef struct KneserVerifyResult {
  bool valid;
  uint64_t checked_count;
} KneserVerifyResult;

/**
 * Result of [`kneser_solve`]. `value`, `lo` and `hi` are 0 when undefined;
 * `lo == hi == value` when optimal.
 */
typedef struct KneserSolveOutcome {
  enum KneserSolveStatus status;
  uint64_t value;
  uint64_t lo;
  uint64_t hi;
  uint64_t nodes;
  uint64_t elapsed_ms;
  bool timed_out;
} KneserSolveOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the thread's last error message into `buf` (NUL-terminated,
 * truncated to `buf_len - 1` bytes) and returns its full length in bytes.
 * `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or point to `buf_len` writable bytes.
 */
size_t kneser_last_error(char *buf, size_t buf_len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *kneser_version(void);

/**
 * Builds a family of `set_count` vertices of K(n,r) from `set_count * r`
 * 1-based elements, stored set after set.
 *
 * # Safety
 * `elements` must point to `set_count * r` values (it may be null when
 * `set_count` is 0); `out` must be a valid pointer.
 */
enum KneserStatus kneser_family_new(uint32_t n,
                                    uint32_t r,
                                    const uint32_t *elements,
                                    size_t set_count,
                                    struct KneserFamily **out);

/**
 * Releases a family handle. Null is ignored.
 *
 * # Safety
 * `family` must be null or a handle not yet freed.
 */
void kneser_family_free(struct KneserFamily *family);

/**
 * Number of members, or 0 for null.
 *
 * # Safety
 * `family` must be null or a live handle.
 */
size_t kneser_family_len(const struct KneserFamily *family);

/**
 * # Safety
 * `family` must be null or a live handle; `n` and `r` must be valid pointers.
 */
enum KneserStatus kneser_family_params(const struct KneserFamily *family, uint32_t *n, uint32_t *r);

/**
 * Writes the r elements of member `index`, in increasing order, to `buf`.
 *
 * # Safety
 * `family` must be null or a live handle; `buf` must point to `buf_len`
 * writable values.
 */
enum KneserStatus kneser_family_member(const struct KneserFamily *family,
                                       size_t index,
                                       uint32_t *buf,
                                       size_t buf_len);

/**
 * Checks `family` against an invariant (`k` is ignored for 2-packings).
 * When `violation` is non-null it receives a new handle with the offending
 * vertex or pair (empty when valid).
 *
 * # Safety
 * `family` must be a live handle; `out` must be valid; `violation` must be
 * null or valid.
 */
enum KneserStatus kneser_verify(const struct KneserFamily *family,
                                enum KneserInvariant invariant,
                                uint32_t k,
                                struct KneserVerifyResult *out,
                                struct KneserFamily **violation);

/**
 * Builds a named construction (`"rho3"`, `"table3"`, ...). Integer
 * parameters equal to 0 are treated as absent; `input` may be null except
 * for lifts.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `input` null or a live handle;
 * `out` valid.
 */
enum KneserStatus kneser_construct(const char *name,
                                   uint32_t k,
                                   uint32_t r,
                                   uint32_t n,
                                   uint32_t t,
                                   uint32_t a,
                                   const struct KneserFamily *input,
                                   struct KneserFamily **out);

/**
 * Computes an invariant of K(n,r). `k` is ignored for 2-packings.
 * `witness` may be null; otherwise it receives the best family found (or
 * null when the invariant is undefined).
 *
 * # Safety
 * `out` must be valid; `witness` null or valid.
 */
enum KneserStatus kneser_solve(enum KneserInvariant invariant,
                               uint32_t n,
                               uint32_t r,
                               uint32_t k,
                               double timeout_secs,
                               uint32_t threads,
                               struct KneserSolveOutcome *out,
                               struct KneserFamily **witness);

/**
 * Closed-form 2-packing number of K(3r-t, r): writes 3 or 4, or 0 when the
 * parameters are outside both known ranges.
 *
 * # Safety
 * `out` must be valid.
 */
enum KneserStatus kneser_threshold_prediction(uint32_t r, uint32_t t, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNESER_H */
