/* C interface to the intersection homology engine. */

#ifndef IH_CAPI_H
#define IH_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum IhStatus {
  IH_STATUS_OK = 0,
  IH_STATUS_NULL_ARGUMENT = 1,
  IH_STATUS_INVALID_UTF8 = 2,
  IH_STATUS_PARSE_ERROR = 3,
  IH_STATUS_VALIDATION_ERROR = 4,
  IH_STATUS_INTERNAL_ERROR = 5,
} IhStatus;

// Opaque handle to a filtered simplicial complex.
typedef struct IhComplex IhComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent error on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread; do not free
// it.
const char *ih_last_error_message(void);

// Release a string allocated by this library.
//
// # Safety
// `s` must have been returned by one of the `ih_*` functions and not yet
// freed.
void ih_string_free(char *s);

// Release a complex handle.
//
// # Safety
// `h` must have been returned by one of the `ih_*` functions and not yet
// freed.
void ih_complex_free(struct IhComplex *h);

// Parse a complex from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum IhStatus ih_complex_from_json(const char *json, struct IhComplex **out);

// Fetch a named builtin complex.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be a valid pointer.
enum IhStatus ih_complex_builtin(const char *name, struct IhComplex **out);

// Serialize a complex to its JSON description.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_to_json(const struct IhComplex *h, char **out);

// Number of simplices (0 on a null handle).
//
// # Safety
// `h` must be a live complex handle or null.
uintptr_t ih_complex_size(const struct IhComplex *h);

// Closed cone with a fresh apex on filtration level 0.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_cone(const struct IhComplex *h, struct IhComplex **out);

// Suspension with two fresh apexes on filtration level 0.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_suspension(const struct IhComplex *h, struct IhComplex **out);

// First barycentric subdivision.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_subdivide(const struct IhComplex *h, struct IhComplex **out);

// Product with a circle triangulated as a cycle on `cycle_len >= 3`
// vertices.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_product_circle(const struct IhComplex *h,
                                        uintptr_t cycle_len,
                                        struct IhComplex **out);

// Move the listed vertices onto filtration level 0.
//
// # Safety
// `h` must be a live complex handle; `vertices` must point to `len`
// readable u32 values; `out` must be a valid pointer.
enum IhStatus ih_complex_mark(const struct IhComplex *h,
                              const uint32_t *vertices,
                              uintptr_t len,
                              struct IhComplex **out);

// Structural pseudomanifold report as JSON.
//
// # Safety
// `h` must be a live complex handle; `out` must be a valid pointer.
enum IhStatus ih_complex_validate(const struct IhComplex *h, char **out);

// Intersection homology as a JSON report (the CLI `compute` format).
//
// `ring` is "Z", "Q" or "Fp:<p>"; `mode` is "g0" or "full". When
// `coefficients_json` is non-null it overrides ring/mode/rank with a full
// coefficient spec (transports included). When `relative_json` is
// non-null it lists generator simplices of a subcomplex and the relative
// groups are computed.
//
// # Safety
// `h` must be a live complex handle; string arguments must be
// NUL-terminated or null as documented; `out` must be a valid pointer.
enum IhStatus ih_compute(const struct IhComplex *h,
                         const char *perversity,
                         const char *ring,
                         const char *mode,
                         uintptr_t rank,
                         const char *coefficients_json,
                         const char *relative_json,
                         char **out);

// Long-exact-sequence verification for the pair `(complex, subcomplex)`,
// as a JSON report.
//
// # Safety
// As for `ih_compute`; `relative_json` must be non-null here.
enum IhStatus ih_les_check(const struct IhComplex *h,
                           const char *perversity,
                           const char *ring,
                           const char *mode,
                           uintptr_t rank,
                           const char *relative_json,
                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IH_CAPI_H */
