/* C interface to the weilform engine. */

#ifndef WEILFORM_H
#define WEILFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. `OK` and `LAW_FAILURE` both deliver a JSON report
 * through the out parameter; `INVALID_INPUT` delivers a diagnostic message
 * instead. The first three values match the CLI's exit codes.
 */
typedef enum WeilformStatus {
  /**
   * The operation ran and every law entry passed.
   */
  WEILFORM_STATUS_OK = 0,
  /**
   * The operation ran and at least one law entry failed.
   */
  WEILFORM_STATUS_LAW_FAILURE = 1,
  /**
   * The document, a name in it, or a string argument could not be used;
   * the out string holds the diagnostic.
   */
  WEILFORM_STATUS_INVALID_INPUT = 2,
  /**
   * A required pointer argument was null; nothing was written.
   */
  WEILFORM_STATUS_NULL_ARGUMENT = 3,
  /**
   * An internal invariant broke mid-call; nothing was written.
   */
  WEILFORM_STATUS_PANIC = 4,
} WeilformStatus;

/**
 * An opaque parsed document of named algebras, homs, maps, fields, and
 * points. Create with `weilform_document_builtin` or
 * `weilform_document_parse`; release with `weilform_document_free`.
 */
typedef struct WeilformDocument WeilformDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The built-in document of named algebras, homs, maps, fields, and points.
 * Returns null only if an internal invariant breaks.
 */
struct WeilformDocument *weilform_document_builtin(void);

/**
 * Parse a JSON document. On success writes the handle to `out_doc` and
 * returns OK; on failure writes null to `out_doc`, the diagnostic to
 * `out_error`, and returns INVALID_INPUT.
 *
 * # Safety
 * `json_text` must be a NUL-terminated string, `out_doc` must point to
 * writable memory, and `out_error` must be null or point to writable
 * memory.
 */
enum WeilformStatus weilform_document_parse(const char *json_text,
                                            struct WeilformDocument **out_doc,
                                            char **out_error);

/**
 * Release a document handle. Null is a no-op.
 *
 * # Safety
 * `doc` must be null or a handle from `weilform_document_builtin` or
 * `weilform_document_parse` that has not been freed already.
 */
void weilform_document_free(struct WeilformDocument *doc);

/**
 * Release a string written by any function here. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string obtained from this library that has not
 * been freed already.
 */
void weilform_string_free(char *s);

/**
 * Run the full law suite: `samples` random instances per law, every random
 * draw derived from `seed`. The report lands in `out_json`; equal seeds
 * give byte-identical reports.
 *
 * # Safety
 * `doc` must be a live document handle; `out_json` must be null or point
 * to writable memory.
 */
enum WeilformStatus weilform_check_all(const struct WeilformDocument *doc,
                                       uint64_t seed,
                                       uintptr_t samples,
                                       char **out_json);

/**
 * Check that every hom declared in the document sends each relation of its
 * source algebra to zero.
 *
 * # Safety
 * `doc` must be a live document handle; `out_json` must be null or point
 * to writable memory.
 */
enum WeilformStatus weilform_hom_check(const struct WeilformDocument *doc,
                                       uint64_t seed,
                                       char **out_json);

/**
 * Build the form attached to the named field and check multilinearity and
 * alternation on `samples` random microcubes.
 *
 * # Safety
 * `doc` must be a live document handle, `name` a NUL-terminated string;
 * `out_json` must be null or point to writable memory.
 */
enum WeilformStatus weilform_form_validate(const struct WeilformDocument *doc,
                                           const char *name,
                                           uint64_t seed,
                                           uintptr_t samples,
                                           char **out_json);

/**
 * Differentiate the named field along both routes, the boundary integral
 * and the symbolic derivative, and compare them on `samples` random
 * microcubes.
 *
 * # Safety
 * `doc` must be a live document handle, `name` a NUL-terminated string;
 * `out_json` must be null or point to writable memory.
 */
enum WeilformStatus weilform_form_derivative_check(const struct WeilformDocument *doc,
                                                   const char *name,
                                                   uint64_t seed,
                                                   uintptr_t samples,
                                                   char **out_json);

/**
 * Describe the named algebra as JSON: presentation, and either its basis
 * and dimension or a notice that it is not finite-dimensional.
 *
 * # Safety
 * `doc` must be a live document handle, `name` a NUL-terminated string;
 * `out_json` must be null or point to writable memory.
 */
enum WeilformStatus weilform_algebra_show(const struct WeilformDocument *doc,
                                          const char *name,
                                          char **out_json);

/**
 * Prolong the named point along the named map and return the image
 * coordinates as JSON.
 *
 * # Safety
 * `doc` must be a live document handle, `map` and `point` NUL-terminated
 * strings; `out_json` must be null or point to writable memory.
 */
enum WeilformStatus weilform_prolong_eval(const struct WeilformDocument *doc,
                                          const char *map,
                                          const char *point,
                                          char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEILFORM_H */
