#ifndef GDALG_H
#define GDALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by all entry points.
typedef enum GdalgStatus {
  GDALG_STATUS_OK = 0,
  // The computation succeeded and the answer is negative, e.g. an identity
  // that does not hold.
  GDALG_STATUS_MISMATCH = 1,
  GDALG_STATUS_NULL_POINTER = 2,
  GDALG_STATUS_INVALID_UTF8 = 3,
  GDALG_STATUS_SYNTAX = 4,
  GDALG_STATUS_INVALID_ARGUMENT = 5,
  GDALG_STATUS_UNKNOWN_BUILTIN = 6,
  GDALG_STATUS_UNSUPPORTED = 7,
  GDALG_STATUS_IO = 8,
  GDALG_STATUS_INTERNAL = 9,
  GDALG_STATUS_PANIC = 10,
} GdalgStatus;

// A parsed operad presentation.
typedef struct GdalgPresentation GdalgPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library on the same thread.
const char *gdalg_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gdalg_string_free(char *s);

// The library version as a static string.
const char *gdalg_version(void);

// `dim SGD(n)` as a decimal string.
//
// # Safety
// `out` must be a valid pointer.
enum GdalgStatus gdalg_sgd_dim(uint32_t n, char **out);

// Checks that an identity vanishes under an expansion map. `identity` is a
// polynomial in the map's source operations or a built-in identity name;
// `target` may be null. Returns `Ok` when the identity holds and `Mismatch`
// when it does not. If `image` is non-null it receives the expanded image
// (`"0"` when the identity holds).
//
// # Safety
// String arguments must be NUL-terminated; `image` must be null or valid.
enum GdalgStatus gdalg_verify_identity(const char *identity,
                                       const char *map,
                                       const char *target,
                                       char **image);

// Loads a built-in presentation by name, or a JSON presentation file.
//
// # Safety
// `name_or_path` must be NUL-terminated; `out` must be valid.
enum GdalgStatus gdalg_presentation_load(const char *name_or_path, struct GdalgPresentation **out);

// Releases a presentation. Null is ignored.
//
// # Safety
// `p` must come from [`gdalg_presentation_load`] and not have been freed.
void gdalg_presentation_free(struct GdalgPresentation *p);

// Number of degree-3 relations after folding degree-2 symmetries.
//
// # Safety
// `p` and `out` must be valid.
enum GdalgStatus gdalg_presentation_relation_count(const struct GdalgPresentation *p, size_t *out);

// Dimension of the arity-`n` component of the operad.
//
// # Safety
// `p` and `out` must be valid.
enum GdalgStatus gdalg_component_dim(const struct GdalgPresentation *p, uint32_t n, size_t *out);

// Decides whether `candidate` lies in the T-ideal generated by the
// presentation's relations in degree `n`. `candidate` is a polynomial in
// the presentation's operations or a built-in identity name. Returns `Ok`
// for a member and `Mismatch` otherwise. If `report` is non-null it
// receives the JSON report with its certificate.
//
// # Safety
// `p` must be valid, `candidate` NUL-terminated, `report` null or valid.
enum GdalgStatus gdalg_membership(const struct GdalgPresentation *p,
                                  const char *candidate,
                                  uint32_t n,
                                  char **report);

// Runs a command-line invocation in process. `argv[0]` is the program
// name. `report` receives the JSON report; `exit_code` the code the
// command-line tool would exit with.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; `report` and `exit_code`
// must be valid.
enum GdalgStatus gdalg_run(int argc, const char *const *argv, char **report, int *exit_code);

// Runs the built-in self-test. `passed` and `total` count the criteria;
// `report` (optional) receives the JSON array of checks. Returns
// `Mismatch` if any check failed.
//
// # Safety
// `passed` and `total` must be valid; `report` null or valid.
enum GdalgStatus gdalg_selftest(bool slow, size_t *passed, size_t *total, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GDALG_H */
