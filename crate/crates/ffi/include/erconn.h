#ifndef ERCONN_H
#define ERCONN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum ErconnStatus {
  ERCONN_STATUS_OK = 0,
  ERCONN_STATUS_INVALID_ARGUMENT = 1,
  ERCONN_STATUS_DOMAIN = 2,
  ERCONN_STATUS_BELOW_N_MIN = 3,
  ERCONN_STATUS_CAPABILITY = 4,
  ERCONN_STATUS_NO_CONVERGENCE = 5,
  ERCONN_STATUS_NULL_POINTER = 6,
  ERCONN_STATUS_PANIC = 7,
  ERCONN_STATUS_IO = 8,
} ErconnStatus;

/**
 * Which closed form of `N_min` to evaluate.
 */
typedef enum ErconnNMinForm {
  ERCONN_N_MIN_FORM_CONSERVATIVE = 0,
  ERCONN_N_MIN_FORM_TIGHT = 1,
} ErconnNMinForm;

/**
 * Opaque graph handle.
 */
typedef struct ErconnGraph ErconnGraph;

typedef struct ErconnNMin {
  double exact_real;
  uint64_t rounded_up;
} ErconnNMin;

typedef struct ErconnProbabilityBound {
  double value;
  double theta;
  /**
   * False when the lower bound on `E[lambda2]` is zero and `value` is 0.
   */
  bool certified;
} ErconnProbabilityBound;

typedef struct ErconnMcResult {
  uint64_t trials;
  double mean_lambda2;
  double var_lambda2;
  double std_error_mean;
  double prob_connected;
  double prob_ge_lambda_min;
  double wilson_connected_low;
  double wilson_connected_high;
  double wilson_ge_lambda_min_low;
  double wilson_ge_lambda_min_high;
  bool ci_reliable;
} ErconnMcResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *erconn_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *erconn_version(void);

/**
 * Minimum union size `N_min(n, p)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_n_min(size_t n,
                               double p,
                               enum ErconnNMinForm form,
                               struct ErconnNMin *out);

/**
 * Large-`n` limit `-ln 3 / ln(1 - p)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_n_min_asymptotic(double p, double *out);

/**
 * Lower bound on `P[lambda2 >= lambda_min]` for a union of `union_size`
 * samples. Fails with `BelowNMin` when `union_size < N_min`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_probability_bound(size_t n,
                                           double p,
                                           uint64_t union_size,
                                           struct ErconnProbabilityBound *out);

/**
 * Bounds on `E[lambda2]` for the union.
 *
 * # Safety
 * `lower` and `upper` must be valid for writes.
 */
enum ErconnStatus erconn_expected_lambda2_bounds(size_t n,
                                                 double p,
                                                 uint64_t union_size,
                                                 double *lower,
                                                 double *upper);

/**
 * Bounds on `Var[lambda2]` for the union.
 *
 * # Safety
 * `lower` and `upper` must be valid for writes.
 */
enum ErconnStatus erconn_variance_bounds(size_t n,
                                         double p,
                                         uint64_t union_size,
                                         double *lower,
                                         double *upper);

/**
 * `E[l_i^k]` for a non-trivial Laplacian eigenvalue (`i >= 2`), `k` in `1..=4`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_eigenvalue_moment(size_t n, double p, uint32_t k, double *out);

/**
 * `lambda2` of the path graph on `n >= 2` nodes.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_line_graph_lambda_min(size_t n, double *out);

/**
 * Samples the union of `union_size` independent `G(n, p)` graphs. The same
 * `(n, p, union_size, seed)` gives the same graph as `erconn sample`.
 *
 * # Safety
 * `out` must be valid for writes. The handle written there must be released
 * with [`erconn_graph_free`].
 */
enum ErconnStatus erconn_graph_sample(size_t n,
                                      double p,
                                      uint64_t union_size,
                                      uint64_t seed,
                                      struct ErconnGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`
 * (`edges[2k]`, `edges[2k + 1]`).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (it may be NULL
 * when `edge_count` is 0) and `out` must be valid for writes.
 */
enum ErconnStatus erconn_graph_from_edges(size_t n,
                                          const size_t *edges,
                                          size_t edge_count,
                                          struct ErconnGraph **out);

/**
 * Edge-wise union of two graphs on the same node set.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
enum ErconnStatus erconn_graph_union(const struct ErconnGraph *a,
                                     const struct ErconnGraph *b,
                                     struct ErconnGraph **out);

/**
 * Number of nodes, or 0 for a NULL handle.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t erconn_graph_node_count(const struct ErconnGraph *g);

/**
 * Number of edges, or 0 for a NULL handle.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t erconn_graph_edge_count(const struct ErconnGraph *g);

/**
 * Second-smallest Laplacian eigenvalue.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ErconnStatus erconn_graph_lambda2(const struct ErconnGraph *g, double *out);

/**
 * Graph connectivity by breadth-first search.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum ErconnStatus erconn_graph_is_connected(const struct ErconnGraph *g, bool *out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle not yet freed.
 */
void erconn_graph_free(struct ErconnGraph *g);

/**
 * Monte-Carlo estimate over `trials` sampled unions.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ErconnStatus erconn_mc_run(size_t n,
                                double p,
                                uint64_t union_size,
                                uint64_t trials,
                                uint64_t seed,
                                size_t workers,
                                struct ErconnMcResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ERCONN_H */
