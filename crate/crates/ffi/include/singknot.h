#ifndef SINGKNOT_H
#define SINGKNOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by fallible calls.
 */
typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_UTF8 = 2,
  SK_STATUS_PARSE = 3,
  SK_STATUS_INVALID_ARGUMENT = 4,
  SK_STATUS_NOT_E_SOLUTION = 5,
  SK_STATUS_SINGULAR_POINT = 6,
  SK_STATUS_INTERNAL = 7,
} SkStatus;

/*
 A parsed singular braid word.
 */
typedef struct SkBraid SkBraid;

/*
 Trace parameters bound to a verified E-solution.
 */
typedef struct SkParams SkParams;

/*
 A value of the invariant, `f * lambda^(half/2)`.
 */
typedef struct SkValue SkValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *sk_last_error(void);

/*
 Parses a braid word. `strands == 0` infers the strand count.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SkStatus sk_braid_parse(const char *text, size_t strands, struct SkBraid **out);

/*
 # Safety
 `b` must come from [`sk_braid_parse`] (or be NULL) and not be used afterwards.
 */
void sk_braid_free(struct SkBraid *b);

/*
 Strand count, or 0 for NULL.

 # Safety
 `b` must be NULL or a live handle.
 */
size_t sk_braid_strands(const struct SkBraid *b);

/*
 Signed letter count (singular letters count +1), or 0 for NULL.

 # Safety
 `b` must be NULL or a live handle.
 */
int64_t sk_braid_exponent(const struct SkBraid *b);

/*
 Binds trace parameters from a solution selector such as `"uniform"`,
 `"roots-of-unity"`, `"subset:0,2"` or `"custom:-1/2,-1/2"`. The values
 must satisfy the E-condition.

 # Safety
 `selector` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SkStatus sk_params_new(uint32_t d, const char *selector, struct SkParams **out);

/*
 # Safety
 `p` must come from [`sk_params_new`] (or be NULL) and not be used afterwards.
 */
void sk_params_free(struct SkParams *p);

/*
 Computes the invariant of the closure of `braid`.

 # Safety
 `params` and `braid` must be live handles and `out` a valid pointer.
 */
enum SkStatus sk_delta(const struct SkParams *params,
                       const struct SkBraid *braid,
                       struct SkValue **out);

/*
 1 when the value carries a factor `sqrt(lambda)`, else 0.

 # Safety
 `v` must be NULL or a live handle.
 */
uint8_t sk_value_half(const struct SkValue *v);

/*
 Text form of the value; release with [`sk_string_free`]. NULL on failure.

 # Safety
 `v` must be NULL or a live handle.
 */
char *sk_value_to_string(const struct SkValue *v);

/*
 # Safety
 `s` must come from this library (or be NULL) and not be used afterwards.
 */
void sk_string_free(char *s);

/*
 Evaluates the rational-function part `f` (without the `sqrt(lambda)`
 factor) at the point `(u, z)`.

 # Safety
 `v` must be a live handle; `out_re` and `out_im` valid pointers.
 */
enum SkStatus sk_value_eval(const struct SkValue *v,
                            double u_re,
                            double u_im,
                            double z_re,
                            double z_im,
                            double *out_re,
                            double *out_im);

/*
 # Safety
 `v` must come from [`sk_delta`] (or be NULL) and not be used afterwards.
 */
void sk_value_free(struct SkValue *v);

/*
 Max-norm residual of the E-system at the complex point
 `x_k = xs_re[k] + i xs_im[k]`, `k = 0..d-2`.

 # Safety
 `xs_re` and `xs_im` must point to `d - 1` doubles (may be NULL when
 `d == 1`); `out` must be a valid pointer.
 */
enum SkStatus sk_esystem_residual(uint32_t d,
                                  const double *xs_re,
                                  const double *xs_im,
                                  double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SINGKNOT_H */
