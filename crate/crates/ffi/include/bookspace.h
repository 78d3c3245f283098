#ifndef BOOKSPACE_H
#define BOOKSPACE_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum BksStatus {
  BKS_STATUS_OK = 0,
  BKS_STATUS_NULL_ARGUMENT = 1,
  BKS_STATUS_INVALID_UTF8 = 2,
  BKS_STATUS_PARSE = 3,
  BKS_STATUS_NOT_A_LATTICE = 4,
  BKS_STATUS_CYCLIC_COVERS = 5,
  BKS_STATUS_INVALID_PARAMS = 6,
  BKS_STATUS_NOT_ADMISSIBLE = 7,
  BKS_STATUS_INVALID_POINT = 8,
  BKS_STATUS_LATTICE_MISMATCH = 9,
  BKS_STATUS_NOT_PURE = 10,
  BKS_STATUS_UNSUPPORTED_DIMENSION = 11,
  BKS_STATUS_NOT_A_BOOK = 12,
  BKS_STATUS_UNKNOWN_LABEL = 13,
  BKS_STATUS_OUT_OF_RANGE = 14,
  BKS_STATUS_BUFFER_TOO_SMALL = 15,
  BKS_STATUS_PANIC = 16,
} BksStatus;

typedef enum BksSublattice {
  BKS_SUBLATTICE_N5 = 0,
  BKS_SUBLATTICE_M3 = 1,
} BksSublattice;

typedef enum BksPointForm {
  BKS_POINT_FORM_BARYCENTRIC = 0,
  BKS_POINT_FORM_FUNCTION = 1,
} BksPointForm;

/**
 * Opaque lattice handle.
 */
typedef struct BksLattice BksLattice;

/**
 * Opaque realization point handle, tied to the lattice it was made with.
 */
typedef struct BksPoint BksPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *bks_last_error(void);

void bks_string_free(char *s);

enum BksStatus bks_lattice_book(size_t d, size_t n, struct BksLattice **out);

enum BksStatus bks_lattice_chain(size_t k, struct BksLattice **out);

/**
 * Parses `{"elements": [...], "covers": [[lower, upper], ...]}`.
 */
enum BksStatus bks_lattice_from_json(const char *json, struct BksLattice **out);

void bks_lattice_free(struct BksLattice *lattice);

enum BksStatus bks_lattice_to_json(const struct BksLattice *lattice, char **out);

/**
 * Number of elements; 0 for NULL.
 */
size_t bks_lattice_size(const struct BksLattice *lattice);

enum BksStatus bks_lattice_index_of(const struct BksLattice *lattice,
                                    const char *label,
                                    size_t *out);

enum BksStatus bks_lattice_label(const struct BksLattice *lattice, size_t index, char **out);

enum BksStatus bks_lattice_leq(const struct BksLattice *lattice, size_t x, size_t y, bool *out);

enum BksStatus bks_lattice_meet(const struct BksLattice *lattice, size_t x, size_t y, size_t *out);

enum BksStatus bks_lattice_join(const struct BksLattice *lattice, size_t x, size_t y, size_t *out);

/**
 * Modular law scan. `triple` must hold 3 slots and is written only when a
 * violation is found.
 */
enum BksStatus bks_lattice_check_modular(const struct BksLattice *lattice,
                                         bool *found,
                                         size_t *triple);

/**
 * Distributive law scan; same contract as [`bks_lattice_check_modular`].
 */
enum BksStatus bks_lattice_check_distributive(const struct BksLattice *lattice,
                                              bool *found,
                                              size_t *triple);

/**
 * Searches for an N5 or M3 copy. `images` must hold 5 slots (template
 * order `0, a, b, c, 1` for N5 and `0, a1, a2, a3, 1` for M3).
 */
enum BksStatus bks_lattice_find_sublattice(const struct BksLattice *lattice,
                                           enum BksSublattice kind,
                                           bool *found,
                                           size_t *images);

/**
 * All law verdicts as a JSON document.
 */
enum BksStatus bks_lattice_check_json(const struct BksLattice *lattice, char **out);

/**
 * `{"vertices": [...], "facets": [[...], ...]}` for the order complex.
 */
enum BksStatus bks_order_complex_json(const struct BksLattice *lattice, char **out);

enum BksStatus bks_order_complex_dimension(const struct BksLattice *lattice, size_t *out);

/**
 * Writes `f_0..f_dim` into `buffer`. `len` receives the number of entries;
 * on [`BksStatus::BufferTooSmall`] it holds the required capacity.
 */
enum BksStatus bks_order_complex_f_vector(const struct BksLattice *lattice,
                                          uint64_t *buffer,
                                          size_t capacity,
                                          size_t *len);

/**
 * Degree of the single highest-degree non-manifold ridge, or 0 when every
 * ridge lies in at most two facets.
 */
enum BksStatus bks_order_complex_max_ridge_degree(const struct BksLattice *lattice, size_t *out);

/**
 * OFF mesh text for a 2-dimensional book lattice.
 */
enum BksStatus bks_export_off(const struct BksLattice *lattice, char **out);

enum BksStatus bks_point_phi(const struct BksLattice *lattice, size_t index, struct BksPoint **out);

enum BksStatus bks_point_sample(const struct BksLattice *lattice,
                                uint64_t seed,
                                struct BksPoint **out);

/**
 * Accepts the barycentric (`chain`/`weights`) or function (`values`) form.
 */
enum BksStatus bks_point_from_json(const struct BksLattice *lattice,
                                   const char *json,
                                   struct BksPoint **out);

enum BksStatus bks_point_to_json(const struct BksLattice *lattice,
                                 const struct BksPoint *point,
                                 enum BksPointForm form,
                                 char **out);

void bks_point_free(struct BksPoint *point);

enum BksStatus bks_point_meet(const struct BksLattice *lattice,
                              const struct BksPoint *f,
                              const struct BksPoint *g,
                              struct BksPoint **out);

enum BksStatus bks_point_join(const struct BksLattice *lattice,
                              const struct BksPoint *f,
                              const struct BksPoint *g,
                              struct BksPoint **out);

/**
 * True when both handles hold the same point of the same lattice.
 */
enum BksStatus bks_point_equal(const struct BksPoint *f, const struct BksPoint *g, bool *out);

/**
 * Sup-norm distance as an exact `"p/q"` string.
 */
enum BksStatus bks_point_sup_distance(const struct BksPoint *f,
                                      const struct BksPoint *g,
                                      char **out);

/**
 * `h_s(f)` for a level `s` given as a `"p/q"` string in `(0, 1]`.
 */
enum BksStatus bks_point_level_generator(const struct BksLattice *lattice,
                                         const struct BksPoint *point,
                                         const char *level,
                                         size_t *out);

/**
 * Full audit of `M_{d,n}` as a JSON report. `all_expected` may be NULL.
 */
enum BksStatus bks_audit_book_json(size_t d,
                                   size_t n,
                                   size_t samples,
                                   uint64_t seed,
                                   bool *all_expected,
                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOOKSPACE_H */
