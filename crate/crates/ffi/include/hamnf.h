#ifndef HAMNF_H
#define HAMNF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HnfFormat {
  HNF_FORMAT_TEXT = 0,
  HNF_FORMAT_RECORDS = 1,
} HnfFormat;

typedef enum HnfMode {
  HNF_MODE_RESONANCE = 0,
  HNF_MODE_GPHNF = 1,
  HNF_MODE_GNF = 2,
} HnfMode;

typedef enum HnfPolicy {
  HNF_POLICY_ZERO_FIRST = 0,
  HNF_POLICY_ZERO_SECOND = 1,
} HnfPolicy;

typedef enum HnfStatus {
  HNF_STATUS_OK = 0,
  HNF_STATUS_VALIDATION = 1,
  HNF_STATUS_PARSE = 2,
  HNF_STATUS_INTERNAL = 3,
  HNF_STATUS_NULL_POINTER = 4,
  HNF_STATUS_INVALID_UTF8 = 5,
} HnfStatus;

/**
 * Opaque handle to a validated system.
 */
typedef struct HnfSystem HnfSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a system document. On success `*out` receives a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum HnfStatus hnf_system_parse(const char *text, struct HnfSystem **out);

/**
 * Builds a catalog system (`takens:M`, `lm:L,M`, `diag:M`, `binom:L,M[,SIGN]`)
 * with a dense random perturbation up to `truncation`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum HnfStatus hnf_system_preset(const char *name,
                                 uint32_t truncation,
                                 uint64_t seed,
                                 struct HnfSystem **out);

/**
 * Truncation degree of a system, or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
uint32_t hnf_system_truncation(const struct HnfSystem *sys);

/**
 * Generalized order of the unperturbed field, or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
uint32_t hnf_system_chi(const struct HnfSystem *sys);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `sys` must be null or a handle not yet freed.
 */
void hnf_system_free(struct HnfSystem *sys);

/**
 * Runs a computation and renders the report into `*out`.
 *
 * # Safety
 * `sys` must be a live handle and `out` a valid pointer.
 */
enum HnfStatus hnf_run(const struct HnfSystem *sys,
                       enum HnfMode mode,
                       enum HnfPolicy policy,
                       enum HnfFormat format,
                       bool verify,
                       char **out);

/**
 * Releases a string returned by `hnf_run`; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void hnf_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *hnf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAMNF_H */
