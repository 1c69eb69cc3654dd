#ifndef ZARANK_H
#define ZARANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZrStatus {
  ZR_STATUS_OK = 0,
  ZR_STATUS_NULL_POINTER = 1,
  ZR_STATUS_INVALID_UTF8 = 2,
  ZR_STATUS_PARSE = 3,
  ZR_STATUS_INVALID_ARGUMENT = 4,
  ZR_STATUS_DOMAIN = 5,
  ZR_STATUS_BUDGET_EXCEEDED = 6,
  ZR_STATUS_UNBALANCED = 7,
  ZR_STATUS_INFEASIBLE = 8,
  ZR_STATUS_IO = 9,
  ZR_STATUS_BUFFER_TOO_SMALL = 10,
  ZR_STATUS_PANIC = 11,
} ZrStatus;

typedef enum ZrVerdict {
  ZR_VERDICT_FOUND = 0,
  ZR_VERDICT_ABSENT = 1,
  ZR_VERDICT_UNKNOWN = 2,
} ZrVerdict;

typedef struct ZrFamily ZrFamily;

typedef struct ZrGraph ZrGraph;

typedef struct ZrLayered ZrLayered;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version, a static NUL-terminated string.
 */
const char *zr_version(void);

/*
 Message of the last failed call on this thread; empty after a success.
 Valid until the next call on this thread.
 */
const char *zr_last_error_message(void);

/*
 # Safety
 `s` is null or a string returned by this library and not yet freed.
 */
void zr_string_free(char *s);

/*
 Parses a family document.

 # Safety
 `json` is a NUL-terminated string; `out` is writable.
 */
enum ZrStatus zr_family_from_json(const char *json, struct ZrFamily **out);

/*
 Uniform random placement of `count` bicliques; `sizes` holds `count` pairs
 `(left, right)` flattened.

 # Safety
 `sizes` points to `2 * count` values (may be null when `count == 0`); `out` is writable.
 */
enum ZrStatus zr_random_family(size_t n,
                               size_t k,
                               const size_t *sizes,
                               size_t count,
                               uint64_t seed,
                               struct ZrFamily **out);

/*
 # Safety
 `f` is null or a live handle.
 */
void zr_family_free(struct ZrFamily *f);

/*
 # Safety
 `f` is a live handle; `n`, `k`, `count` are writable.
 */
enum ZrStatus zr_family_shape(const struct ZrFamily *f, size_t *n, size_t *k, size_t *count);

/*
 # Safety
 `f` is a live handle; `out` is writable.
 */
enum ZrStatus zr_family_to_json(const struct ZrFamily *f, char **out);

/*
 Union of every biclique as a bipartite graph.

 # Safety
 `f` is a live handle; `out` is writable.
 */
enum ZrStatus zr_family_union(const struct ZrFamily *f, struct ZrGraph **out);

/*
 # Safety
 `json` is a NUL-terminated string; `out` is writable.
 */
enum ZrStatus zr_graph_from_json(const char *json, struct ZrGraph **out);

/*
 # Safety
 `g` is null or a live handle.
 */
void zr_graph_free(struct ZrGraph *g);

/*
 # Safety
 `g` is a live handle; `out` is writable.
 */
enum ZrStatus zr_graph_edge_count(const struct ZrGraph *g, size_t *out);

/*
 # Safety
 `g` is a live handle; `out` is writable.
 */
enum ZrStatus zr_graph_to_json(const struct ZrGraph *g, char **out);

/*
 Searches for a `k×k` independent set within `node_budget` search nodes.

 On `ZR_VERDICT_FOUND` the first `k` entries of `s_out` and `t_out` hold the
 witness, ascending. `capacity` is the length of each buffer and must be at least `k`.

 # Safety
 `g` is a live handle; `s_out`, `t_out` hold `capacity` values; `verdict` is writable.
 */
enum ZrStatus zr_find_independent_set(const struct ZrGraph *g,
                                      size_t k,
                                      uint64_t node_budget,
                                      size_t *s_out,
                                      size_t *t_out,
                                      size_t capacity,
                                      enum ZrVerdict *verdict);

/*
 Bound report (JSON) with the default constants.

 # Safety
 `f` is a live handle; `out` is writable.
 */
enum ZrStatus zr_bounds_report_json(const struct ZrFamily *f, char **out);

/*
 Union-bound certificate: writes `log₂` of the failure bound and whether it is negative.

 # Safety
 `sizes` points to `2 * count` values (may be null when `count == 0`);
 `log2_bound` and `certified` are writable.
 */
enum ZrStatus zr_certify(size_t n,
                         size_t k,
                         const size_t *sizes,
                         size_t count,
                         bool exact,
                         double *log2_bound,
                         bool *certified);

/*
 Deletion attack report (JSON) with median threshold and exact truncation.

 # Safety
 `f` is a live handle; `out` is writable.
 */
enum ZrStatus zr_attack_json(const struct ZrFamily *f,
                             uint64_t seed,
                             size_t trials,
                             bool asymmetric,
                             char **out);

/*
 # Safety
 `json` is a NUL-terminated string; `out` is writable.
 */
enum ZrStatus zr_layered_from_json(const char *json, struct ZrLayered **out);

/*
 # Safety
 `g` is null or a live handle.
 */
void zr_layered_free(struct ZrLayered *g);

/*
 Exhaustive superconcentrator check over every `k` (JSON verdict).

 # Safety
 `g` is a live handle; `out` is writable.
 */
enum ZrStatus zr_sc_verify_json(const struct ZrLayered *g, uint64_t pair_budget, char **out);

/*
 `H(p)` in bits.

 # Safety
 `out` is writable.
 */
enum ZrStatus zr_binary_entropy(double p, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZARANK_H */
