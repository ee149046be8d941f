#ifndef INCENTIVE_FFI_H
#define INCENTIVE_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IncStatus {
  INC_STATUS_OK = 0,
  INC_STATUS_NULL_POINTER = 1,
  INC_STATUS_DOMAIN = 2,
  INC_STATUS_GCD_NOT_ONE = 3,
  INC_STATUS_NOT_ADMISSIBLE = 4,
  INC_STATUS_INVALID_SEQUENCE = 5,
  INC_STATUS_INVALID_REMOVAL = 6,
  INC_STATUS_ROOT_MISSES_X = 7,
  INC_STATUS_BOUND_TOO_LARGE = 8,
  INC_STATUS_INFINITE_FAMILY = 9,
  INC_STATUS_ITERATION_LIMIT = 10,
  INC_STATUS_INTERNAL = 11,
  INC_STATUS_BUFFER_TOO_SMALL = 12,
  INC_STATUS_OUT_OF_RANGE = 13,
} IncStatus;

typedef enum IncClosureKind {
  INC_CLOSURE_KIND_NUMERICAL = 0,
  INC_CLOSURE_KIND_MULTIPLE_OF = 1,
  INC_CLOSURE_KIND_TRIVIAL = 2,
} IncClosureKind;

typedef enum IncBoundKind {
  INC_BOUND_KIND_MAX_FROBENIUS = 0,
  INC_BOUND_KIND_MAX_GENUS = 1,
  INC_BOUND_KIND_MAX_DEPTH = 2,
} IncBoundKind;

/**
 * Opaque handle to the smallest incentive containing a set.
 */
typedef struct IncClosure IncClosure;

/**
 * Opaque handle to an enumerated tree.
 */
typedef struct IncTree IncTree;

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *inc_last_error(void);

/**
 * # Safety
 * `c` must hold `c_len` values; `out` must be writable.
 */
enum IncStatus inc_theta(const int64_t *c, size_t c_len, int64_t *out);

/**
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_is_admissible(const int64_t *x,
                                 size_t x_len,
                                 const int64_t *c,
                                 size_t c_len,
                                 bool *out);

/**
 * Whether the monoid generated by `gens` is a C-incentive.
 *
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_is_incentive(const int64_t *gens,
                                size_t gens_len,
                                const int64_t *c,
                                size_t c_len,
                                bool *out);

/**
 * Computes the smallest C-incentive containing `x`. On success `*out`
 * receives a handle to release with [`inc_closure_free`].
 *
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_closure_new(const int64_t *x,
                               size_t x_len,
                               const int64_t *c,
                               size_t c_len,
                               struct IncClosure **out);

/**
 * # Safety
 * `handle` must come from [`inc_closure_new`] and not be used afterwards.
 */
void inc_closure_free(struct IncClosure *handle);

/**
 * # Safety
 * `handle` must be a live closure handle.
 */
enum IncClosureKind inc_closure_kind(const struct IncClosure *handle);

/**
 * The `d` with closure `= d·S`; 1 for numerical and trivial closures.
 *
 * # Safety
 * `handle` must be a live closure handle.
 */
int64_t inc_closure_divisor(const struct IncClosure *handle);

/**
 * Copies the minimal generators (at full scale). `*out_len` receives the
 * count even when the buffer is too small.
 *
 * # Safety
 * `handle` must be live; `buf` must be valid for `cap` writes.
 */
enum IncStatus inc_closure_msg(const struct IncClosure *handle,
                               int64_t *buf,
                               size_t cap,
                               size_t *out_len);

/**
 * Frobenius number and genus of the reduced numerical semigroup.
 *
 * # Safety
 * `handle` must be live; out pointers must be writable.
 */
enum IncStatus inc_closure_stats(const struct IncClosure *handle,
                                 int64_t *frobenius,
                                 size_t *genus);

/**
 * # Safety
 * `handle` must be a live closure handle.
 */
bool inc_closure_contains(const struct IncClosure *handle, int64_t n);

/**
 * Membership of `n` in the closure of `x`, computed without generators.
 *
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_closure_membership(const int64_t *x,
                                      size_t x_len,
                                      const int64_t *c,
                                      size_t c_len,
                                      int64_t n,
                                      bool *out);

/**
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_mab_member(const int64_t *a,
                              size_t a_len,
                              const int64_t *b,
                              size_t b_len,
                              int64_t n,
                              bool *out);

/**
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_mab_invoice(const int64_t *a,
                               size_t a_len,
                               const int64_t *b,
                               size_t b_len,
                               const int64_t *seq,
                               size_t seq_len,
                               int64_t *out);

/**
 * Enumerates the tree of numerical C-incentives, restricted to those
 * containing `x` when `has_x` is set.
 *
 * # Safety
 * Array arguments must hold the stated number of values; `out` must be writable.
 */
enum IncStatus inc_tree_new(const int64_t *c,
                            size_t c_len,
                            bool has_x,
                            const int64_t *x,
                            size_t x_len,
                            enum IncBoundKind bound_kind,
                            uint64_t bound_value,
                            struct IncTree **out);

/**
 * # Safety
 * `handle` must come from [`inc_tree_new`] and not be used afterwards.
 */
void inc_tree_free(struct IncTree *handle);

/**
 * # Safety
 * `handle` must be a live tree handle.
 */
size_t inc_tree_node_count(const struct IncTree *handle);

/**
 * Whether the bound cut off part of the tree.
 *
 * # Safety
 * `handle` must be a live tree handle.
 */
bool inc_tree_truncated(const struct IncTree *handle);

/**
 * # Safety
 * `handle` must be live; `buf` must be valid for `cap` writes.
 */
enum IncStatus inc_tree_node_msg(const struct IncTree *handle,
                                 size_t index,
                                 int64_t *buf,
                                 size_t cap,
                                 size_t *out_len);

/**
 * Parent id and removed generator of a node; both −1 for the root.
 *
 * # Safety
 * `handle` must be live; out pointers must be writable.
 */
enum IncStatus inc_tree_node_edge(const struct IncTree *handle,
                                  size_t index,
                                  int64_t *parent,
                                  int64_t *removed_generator);

/**
 * # Safety
 * `handle` must be live; out pointers must be writable.
 */
enum IncStatus inc_tree_node_stats(const struct IncTree *handle,
                                   size_t index,
                                   int64_t *frobenius,
                                   size_t *genus,
                                   size_t *depth);

/**
 * The tree as JSON. Release with [`inc_string_free`]; null on failure.
 *
 * # Safety
 * `handle` must be a live tree handle.
 */
char *inc_tree_to_json(const struct IncTree *handle);

/**
 * The tree in Graphviz DOT. Release with [`inc_string_free`].
 *
 * # Safety
 * `handle` must be a live tree handle.
 */
char *inc_tree_to_dot(const struct IncTree *handle);

/**
 * # Safety
 * `s` must come from one of the string-returning functions and not be
 * used afterwards.
 */
void inc_string_free(char *s);

#endif  /* INCENTIVE_FFI_H */
