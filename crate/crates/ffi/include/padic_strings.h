#ifndef PADIC_STRINGS_H
#define PADIC_STRINGS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_DOMAIN = 1,
  PS_STATUS_ARGUMENT = 2,
  PS_STATUS_POLE = 3,
  PS_STATUS_JUMP_POINT = 4,
  PS_STATUS_RESOURCE = 5,
  PS_STATUS_UNSUPPORTED = 6,
  PS_STATUS_PARSE = 7,
  PS_STATUS_IO = 8,
  PS_STATUS_NULL_POINTER = 9,
  PS_STATUS_PANIC = 10,
} PsStatus;

// Opaque fractal string descriptor.
typedef struct PsString PsString;

// A pole `re + i im` with its lattice index.
typedef struct PsComplexDimension {
  int64_t index;
  double re;
  double im;
} PsComplexDimension;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next failing call on the same thread.
const char *ps_last_error_message(void);

// Build a string from a JSON descriptor `{family, p, m, k, S, diagonal, world}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PsStatus ps_string_from_json(const char *json, struct PsString **out);

// `L_p(m, k)` with the default recursion set, or the diagonal one.
//
// # Safety
// `out` must be writable.
enum PsStatus ps_string_rational(uint64_t p,
                                 uint32_t m,
                                 uint32_t k,
                                 bool diagonal,
                                 struct PsString **out);

// # Safety
// `out` must be writable.
enum PsStatus ps_string_cantor_p(uint64_t p, struct PsString **out);

// # Safety
// `out` must be writable.
enum PsStatus ps_string_cantor_2(struct PsString **out);

// # Safety
// `out` must be writable.
enum PsStatus ps_string_euler(uint64_t p, struct PsString **out);

// # Safety
// `out` must be writable.
enum PsStatus ps_string_smith(uint64_t m, struct PsString **out);

// Release a handle. NULL is ignored.
//
// # Safety
// `s` must come from a `ps_string_*` constructor and not be used afterwards.
void ps_string_free(struct PsString *s);

// Release text returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void ps_cstring_free(char *s);

// Short name such as `CS_3` or `L_2(m=2,k=1)`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_string_name(const struct PsString *s, char **out);

// Minkowski dimension `D`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_dimension(const struct PsString *s, double *out);

// Oscillatory period `2 pi / ln q`.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_period(const struct PsString *s, double *out);

// The residue shared by every complex dimension.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum PsStatus ps_residue(const struct PsString *s, double *out);

// Geometric zeta function at `re + i im`.
//
// # Safety
// `s` must be a live handle; `out_re` and `out_im` must be writable.
enum PsStatus ps_zeta_eval(const struct PsString *s,
                           double re,
                           double im,
                           double *out_re,
                           double *out_im);

// Complex dimensions with imaginary part in `[tmin, tmax]`. Writes at most
// `cap` entries to `buf` (which may be NULL when `cap` is 0) and the total
// number found to `out_len`.
//
// # Safety
// `buf` must hold `cap` entries; `out_len` must be writable.
enum PsStatus ps_complex_dimensions(const struct PsString *s,
                                    double tmin,
                                    double tmax,
                                    struct PsComplexDimension *buf,
                                    size_t cap,
                                    size_t *out_len);

// Exact tube volume at the rational scale `eps` (text such as `"1/9"`).
// `out_exact` may be NULL; otherwise it receives the `num/den` text.
//
// # Safety
// `s` must be a live handle; `eps` NUL-terminated; `out` writable.
enum PsStatus ps_volume_direct(const struct PsString *s,
                               const char *eps,
                               double *out,
                               char **out_exact);

// Tube volume from `n` conjugate pairs of complex dimensions, with Fejer
// weights when `cesaro` is set.
//
// # Safety
// `s` must be a live handle; `out` writable.
enum PsStatus ps_volume_series(const struct PsString *s,
                               double eps,
                               size_t n,
                               bool cesaro,
                               double *out);

// Closed-form average Minkowski content and its average over `k` whole
// periods starting at scale `q^-m0`.
//
// # Safety
// `s` must be a live handle; outputs writable.
enum PsStatus ps_average_content(const struct PsString *s,
                                 uint32_t m0,
                                 uint32_t k,
                                 double *out_closed,
                                 double *out_numeric);

// Product of all absolute values of the rational `x`, as `num/den` text.
//
// # Safety
// `x` NUL-terminated; `out` writable.
enum PsStatus ps_artin_product(const char *x, char **out);

// Local Veneziano amplitude at the prime `p`.
//
// # Safety
// `out` writable.
enum PsStatus ps_veneziano(uint64_t p, double a, double b, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADIC_STRINGS_H */
