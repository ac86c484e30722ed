#ifndef ABMOD_H
#define ABMOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. The first five values match the exit
 * codes of the `abmod` binary.
 */
typedef enum AbmodStatus {
  ABMOD_STATUS_OK = 0,
  /**
   * Malformed family document or bad argument value.
   */
  ABMOD_STATUS_USAGE = 1,
  /**
   * Non-isolated singularity or a family the engine does not handle.
   */
  ABMOD_STATUS_UNSUPPORTED = 2,
  /**
   * An internal budget was exhausted.
   */
  ABMOD_STATUS_INTERNAL_CAP = 3,
  /**
   * At least one fixture or self-check failed; the JSON is still returned.
   */
  ABMOD_STATUS_FIXTURE_FAILURE = 4,
  ABMOD_STATUS_NULL_ARGUMENT = 5,
  ABMOD_STATUS_INVALID_UTF8 = 6,
  /**
   * The engine panicked; the handle may still be used.
   */
  ABMOD_STATUS_PANIC = 7,
} AbmodStatus;

typedef enum AbmodOperator {
  ABMOD_OPERATOR_A = 0,
  ABMOD_OPERATOR_NABLA = 1,
} AbmodOperator;

/**
 * A validated family description.
 */
typedef struct AbmodFamily AbmodFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse and validate a family document (UTF-8, NUL-terminated).
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum AbmodStatus abmod_family_parse(const char *text, struct AbmodFamily **out);

/**
 * Release a family handle. Null is ignored.
 *
 * # Safety
 * `fam` must come from `abmod_family_parse` and not be used afterwards.
 */
void abmod_family_free(struct AbmodFamily *fam);

/**
 * Override the truncation order of a family (at least 2).
 *
 * # Safety
 * `fam` must be a live handle.
 */
enum AbmodStatus abmod_family_set_b_order(struct AbmodFamily *fam, uintptr_t n);

/**
 * Milnor number of the generic fiber at the origin.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_family_mu(const struct AbmodFamily *fam, uintptr_t *out);

/**
 * Full analysis report. Returns `FixtureFailure` (with the report) when a
 * structural self-check fails.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_analyze_json(const struct AbmodFamily *fam, char **out);

/**
 * Staircase, Milnor number and bad parameter values.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_basis_json(const struct AbmodFamily *fam, char **out);

/**
 * Block matrix of `a` or `nabla`.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_matrix_json(const struct AbmodFamily *fam,
                                   enum AbmodOperator op,
                                   char **out);

/**
 * The lattices P and G.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_lattice_g_json(const struct AbmodFamily *fam, char **out);

/**
 * `m^k df/dt ⊂ m^(k+1) J` and stability of `M^k`.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be writable.
 */
enum AbmodStatus abmod_check_criterion_json(const struct AbmodFamily *fam, uint32_t k, char **out);

/**
 * Worked-example fixture table. Returns `FixtureFailure` (with the table)
 * if any row fails.
 *
 * # Safety
 * `out` must be writable.
 */
enum AbmodStatus abmod_verify_paper_examples(char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void abmod_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *abmod_last_error(void);

/**
 * Library version as a static C string.
 */
const char *abmod_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABMOD_H */
