#ifndef HEMIRING_H
#define HEMIRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum HmStatus {
  HM_STATUS_OK = 0,
  HM_STATUS_NULL_ARGUMENT = 1,
  HM_STATUS_INVALID_UTF8 = 2,
  HM_STATUS_UNKNOWN_STRUCTURE = 3,
  HM_STATUS_PARSE_ERROR = 4,
  /**
   * The operation does not exist in the structure, or the operands belong elsewhere.
   */
  HM_STATUS_NOT_APPLICABLE = 5,
  HM_STATUS_INCOMPARABLE = 6,
  HM_STATUS_PANIC = 7,
} HmStatus;

/**
 * An element of some [`HmStructure`].
 */
typedef struct HmElement HmElement;

/**
 * A registered ordered structure.
 */
typedef struct HmStructure HmStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hm_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 *
 * The pointer stays valid until the next call on the same thread.
 */
const char *hm_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hm_string_free(char *s);

/**
 * Resolves an identifier such as `rational`, `z1p:2`, `zx` or `maxtimes-qpos`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a writable pointer.
 */
enum HmStatus hm_structure_new(const char *id, struct HmStructure **out);

/**
 * # Safety
 * `s` must come from [`hm_structure_new`] or be null.
 */
void hm_structure_free(struct HmStructure *s);

/**
 * Canonical identifier of the structure; free with [`hm_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a writable pointer.
 */
enum HmStatus hm_structure_id(const struct HmStructure *s, char **out);

/**
 * Parses element text in the structure.
 *
 * # Safety
 * `s` must be a live handle, `text` NUL-terminated and `out` writable.
 */
enum HmStatus hm_element_parse(const struct HmStructure *s,
                               const char *text_in,
                               struct HmElement **out);

/**
 * # Safety
 * `e` must come from this library or be null.
 */
void hm_element_free(struct HmElement *e);

/**
 * Canonical text of an element; free with [`hm_string_free`].
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HmStatus hm_element_render(const struct HmStructure *s, const struct HmElement *e, char **out);

/**
 * `a + b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HmStatus hm_element_add(const struct HmStructure *s,
                             const struct HmElement *a,
                             const struct HmElement *b,
                             struct HmElement **out);

/**
 * `a · b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HmStatus hm_element_mul(const struct HmStructure *s,
                             const struct HmElement *a,
                             const struct HmElement *b,
                             struct HmElement **out);

/**
 * `−a`; `NotApplicable` outside rings.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HmStatus hm_element_neg(const struct HmStructure *s,
                             const struct HmElement *a,
                             struct HmElement **out);

/**
 * Writes −1, 0 or 1 for `a < b`, `a = b`, `a > b`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum HmStatus hm_element_compare(const struct HmStructure *s,
                                 const struct HmElement *a,
                                 const struct HmElement *b,
                                 int *out);

/**
 * Runs the law suite and writes the total number of failures.
 *
 * # Safety
 * `s` must be a live handle and `failures` writable.
 */
enum HmStatus hm_check_laws(const struct HmStructure *s,
                            uintptr_t samples,
                            uint64_t seed,
                            uintptr_t *failures);

/**
 * Runs a command line (`argv[0]` is the program name).
 *
 * Writes the exit code and the standard output text; free the text with
 * [`hm_string_free`]. Standard error text becomes the last error message.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
 */
enum HmStatus hm_cli_run(int argc, const char *const *argv, int *exit_code, char **stdout_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEMIRING_H */
