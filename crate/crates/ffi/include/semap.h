#ifndef SEMAP_H
#define SEMAP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SemapOp {
  SEMAP_OP_TRUNCATE = 0,
  SEMAP_OP_RECTIFY = 1,
  SEMAP_OP_DUAL = 2,
  SEMAP_OP_REMOVE_DEEP_BLUE = 3,
  SEMAP_OP_INSERT_MATCHING = 4,
  SEMAP_OP_QUOTIENT = 5,
  SEMAP_OP_DOUBLE_COVER = 6,
} SemapOp;

typedef enum SemapStatus {
  SEMAP_STATUS_OK = 0,
  SEMAP_STATUS_NULL_POINTER = 1,
  SEMAP_STATUS_INVALID_UTF8 = 2,
  SEMAP_STATUS_PARSE_ERROR = 3,
  SEMAP_STATUS_INVALID_MAP = 4,
  SEMAP_STATUS_UNKNOWN_NAME = 5,
  SEMAP_STATUS_WRONG_SHAPE = 6,
  SEMAP_STATUS_NOT_SEMI_EQUIVELAR = 7,
  SEMAP_STATUS_NON_POLYHEDRAL_QUOTIENT = 8,
  SEMAP_STATUS_NOT_FREE_INVOLUTION = 9,
  SEMAP_STATUS_NOT_CLASSIFIED = 10,
  SEMAP_STATUS_PANIC = 11,
} SemapStatus;

/**
 * Opaque map handle.
 */
typedef struct SemapMap SemapMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the text format (`map N` then `f v1 v2 ...` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SemapStatus semap_map_parse(const char *text, struct SemapMap **out);

/**
 * Builds a map from `face_count` faces: face `i` has `sizes[i]` vertices,
 * read consecutively from `vertices`.
 *
 * # Safety
 * `sizes` must hold `face_count` entries and `vertices` their sum.
 */
enum SemapStatus semap_map_from_faces(const size_t *sizes,
                                      size_t face_count,
                                      const size_t *vertices,
                                      struct SemapMap **out);

/**
 * Builds a named catalog map such as `snub-cube`, `prism-7` or
 * `rp2-icosahedron`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SemapStatus semap_catalog_build(const char *name, struct SemapMap **out);

/**
 * Releases a map. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void semap_map_free(struct SemapMap *m);

/**
 * Vertex, edge and face counts.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_map_counts(const struct SemapMap *m, size_t *f0, size_t *f1, size_t *f2);

/**
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_map_euler(const struct SemapMap *m, int64_t *out);

/**
 * The common vertex type, e.g. `[3^4,5]`.
 *
 * # Safety
 * All pointers must be valid; free the string with `semap_string_free`.
 */
enum SemapStatus semap_map_vertex_type(const struct SemapMap *m, char **out);

/**
 * The map in text format.
 *
 * # Safety
 * All pointers must be valid; free the string with `semap_string_free`.
 */
enum SemapStatus semap_map_to_text(const struct SemapMap *m, char **out);

/**
 * Applies an operator. `quotient` uses the first free involution found;
 * `insert_matching` starts from the least eligible diagonal.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_map_apply(const struct SemapMap *m, enum SemapOp op, struct SemapMap **out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_are_isomorphic(const struct SemapMap *a,
                                      const struct SemapMap *b,
                                      bool *out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_automorphism_order(const struct SemapMap *m, size_t *out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum SemapStatus semap_is_vertex_transitive(const struct SemapMap *m, bool *out);

/**
 * Catalog name of a semi-equivelar map on the sphere or the projective
 * plane.
 *
 * # Safety
 * All pointers must be valid; free the string with `semap_string_free`.
 */
enum SemapStatus semap_identify(const struct SemapMap *m, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void semap_string_free(char *s);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next library call on the same thread.
 */
const char *semap_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMAP_H */
