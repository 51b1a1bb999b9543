#ifndef KSECTION_H
#define KSECTION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum KsecStatus {
  KSEC_STATUS_OK = 0,
  KSEC_STATUS_NULL_POINTER = 1,
  KSEC_STATUS_INVALID_GRAPH = 2,
  KSEC_STATUS_NOT_A_TREE = 3,
  KSEC_STATUS_INVALID_DECOMPOSITION = 4,
  KSEC_STATUS_OUT_OF_RANGE = 5,
  /**
   * Width, size or memory limit exceeded.
   */
  KSEC_STATUS_RESOURCE_LIMIT = 6,
  /**
   * Internal invariant violated or a panic was caught.
   */
  KSEC_STATUS_INTERNAL = 7,
} KsecStatus;

typedef struct KsecGraph KsecGraph;

typedef struct KsecResult KsecResult;

typedef struct KsecTreeDecomposition KsecTreeDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes) and returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t ksec_last_error(char *buf, size_t len);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2m` 1-based ids.
 *
 * # Safety
 * `edges` must point to `2 * m` values and `out` must be writable.
 */
enum KsecStatus ksec_graph_new(size_t n, const size_t *edges, size_t m, struct KsecGraph **out);

/**
 * # Safety
 * `g` must be null or come from [`ksec_graph_new`] and not be freed twice.
 */
void ksec_graph_free(struct KsecGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
size_t ksec_graph_vertex_count(const struct KsecGraph *g);

/**
 * Builds a tree decomposition. Bag `i` holds `bag_sizes[i]` 1-based vertex
 * ids, stored back to back in `bag_vertices`; `tree_edges` holds
 * `2 * edge_count` 1-based bag ids.
 *
 * # Safety
 * All arrays must have the stated lengths and `out` must be writable.
 */
enum KsecStatus ksec_td_new(size_t bag_count,
                            const size_t *bag_sizes,
                            const size_t *bag_vertices,
                            const size_t *tree_edges,
                            size_t edge_count,
                            struct KsecTreeDecomposition **out);

/**
 * # Safety
 * `td` must be null or come from [`ksec_td_new`] and not be freed twice.
 */
void ksec_td_free(struct KsecTreeDecomposition *td);

/**
 * k-section of a tree.
 *
 * # Safety
 * `tree` must be a live graph handle and `out` writable.
 */
enum KsecStatus ksec_ksection_tree(const struct KsecGraph *tree, size_t k, struct KsecResult **out);

/**
 * k-section of a graph with a tree decomposition.
 *
 * # Safety
 * `g` and `td` must be live handles and `out` writable.
 */
enum KsecStatus ksec_ksection_td(const struct KsecGraph *g,
                                 const struct KsecTreeDecomposition *td,
                                 size_t k,
                                 struct KsecResult **out);

/**
 * # Safety
 * `r` must be null or come from a `ksec_ksection_*` call.
 */
void ksec_result_free(struct KsecResult *r);

/**
 * Number of edges between different parts.
 *
 * # Safety
 * `r` must be a live result handle.
 */
size_t ksec_result_width(const struct KsecResult *r);

/**
 * # Safety
 * `r` must be a live result handle.
 */
size_t ksec_result_part_count(const struct KsecResult *r);

/**
 * 1 if the width is within every applicable bound, else 0.
 *
 * # Safety
 * `r` must be a live result handle.
 */
int32_t ksec_result_within_bounds(const struct KsecResult *r);

/**
 * Smallest applicable bound, or NaN if none applies.
 *
 * # Safety
 * `r` must be a live result handle.
 */
double ksec_result_bound(const struct KsecResult *r);

/**
 * Copies the vertices of part `part` (1-based) into `buf` when `len` is
 * large enough, and stores the part size in `size`.
 *
 * # Safety
 * `r` must be a live result handle, `buf` must have room for `len` values
 * and `size` must be writable.
 */
enum KsecStatus ksec_result_part(const struct KsecResult *r,
                                 size_t part,
                                 size_t *buf,
                                 size_t len,
                                 size_t *size);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSECTION_H */
