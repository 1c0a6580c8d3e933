#ifndef WORDREP_H
#define WORDREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values line up with the CLI exit codes.
 */
typedef enum WrStatus {
  WR_STATUS_OK = 0,
  WR_STATUS_INVALID_INPUT = 1,
  WR_STATUS_NOT_BIPARTITE = 2,
  WR_STATUS_VERIFICATION_FAILED = 3,
  WR_STATUS_BUDGET_EXCEEDED = 4,
  WR_STATUS_NULL_POINTER = 6,
  WR_STATUS_INTERNAL = 7,
} WrStatus;

/**
 * Opaque graph handle.
 */
typedef struct WrGraph WrGraph;

/**
 * Opaque handle to a verified representation.
 */
typedef struct WrRepresentation WrRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null. Valid
 * until the next call into the library from the same thread.
 */
const char *wr_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void wr_string_free(char *s);

/**
 * Parses an edge list into a new graph handle.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum WrStatus wr_graph_parse(const char *text, struct WrGraph **out);

/**
 * # Safety
 * `g` is null or a handle from [`wr_graph_parse`] not yet freed.
 */
void wr_graph_free(struct WrGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 */
size_t wr_graph_vertex_count(const struct WrGraph *g);

size_t wr_graph_edge_count(const struct WrGraph *g);

/**
 * Builds a verified representation. `policy` may be null for the default
 * ordering. Without `allow_isolated` isolated vertices are left out of the
 * word.
 *
 * # Safety
 * `g` is a live graph handle, `policy` null or NUL-terminated, `out`
 * writable.
 */
enum WrStatus wr_represent(const struct WrGraph *g,
                           const char *policy,
                           bool allow_isolated,
                           struct WrRepresentation **out);

/**
 * # Safety
 * `r` is null or a live representation handle.
 */
void wr_representation_free(struct WrRepresentation *r);

/**
 * Number of nonempty permutations in the word, or 0 for a null handle.
 */
size_t wr_representation_perm_count(const struct WrRepresentation *r);

/**
 * The word as space-separated labels; free with [`wr_string_free`].
 */
char *wr_representation_word(const struct WrRepresentation *r);

/**
 * The JSON result document; free with [`wr_string_free`].
 */
char *wr_representation_json(const struct WrRepresentation *r);

/**
 * Checks whether the whitespace-separated `word` represents `g`. On a
 * mismatch `*out_ok` is false and [`wr_last_error`] describes it.
 *
 * # Safety
 * `g` is a live graph handle, `word` NUL-terminated, `out_ok` writable.
 */
enum WrStatus wr_verify(const struct WrGraph *g, const char *word, bool *out_ok);

/**
 * Exact permutation representation number by exhaustive search. Zero
 * limits select the defaults (6 vertices, k <= 3).
 *
 * # Safety
 * `g` is a live graph handle, `out_k` writable.
 */
enum WrStatus wr_min_perm_representation(const struct WrGraph *g,
                                         size_t max_k,
                                         uint64_t max_candidates,
                                         size_t *out_k);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WORDREP_H */
