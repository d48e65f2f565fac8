#ifndef BIMAC_H
#define BIMAC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BimacFormat {
  BIMAC_FORMAT_TEXT = 0,
  BIMAC_FORMAT_LATEX = 1,
  BIMAC_FORMAT_JSON = 2,
} BimacFormat;

typedef enum BimacSign {
  BIMAC_SIGN_PLUS = 0,
  BIMAC_SIGN_MINUS = 1,
} BimacSign;

typedef enum BimacStatus {
  BIMAC_STATUS_OK = 0,
  BIMAC_STATUS_NULL_POINTER = 1,
  BIMAC_STATUS_INVALID_UTF8 = 2,
  BIMAC_STATUS_PARSE = 3,
  BIMAC_STATUS_DOMAIN = 4,
  BIMAC_STATUS_DIVISION_BY_ZERO = 5,
  BIMAC_STATUS_DEGENERATE = 6,
  BIMAC_STATUS_INCONSISTENT = 7,
  BIMAC_STATUS_CACHE = 8,
  BIMAC_STATUS_INDEX_OUT_OF_RANGE = 9,
  BIMAC_STATUS_PANIC = 10,
} BimacStatus;

typedef enum BimacVariant {
  /**
   * `e_r(x_{m+1}, ..., x_N)`.
   */
  BIMAC_VARIANT_UPPER = 0,
  /**
   * `e_r(x_1, ..., x_m)`.
   */
  BIMAC_VARIANT_LOWER = 1,
} BimacVariant;

/**
 * A Pieri expansion: a list of `(Omega, coefficient)`.
 */
typedef struct BimacExpansion BimacExpansion;

/**
 * A polynomial in `x_1..x_N` with coefficients in `Q(q,t)`.
 */
typedef struct BimacPoly BimacPoly;

/**
 * An element of `Q(q,t)`.
 */
typedef struct BimacScalar BimacScalar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or null. Owned by the library.
 */
const char *bimac_last_error(void);

void bimac_string_free(char *s);

/**
 * `E_eta` for the composition `eta[0..len]`.
 */
enum BimacStatus bimac_e_new(const uint32_t *eta, size_t len, struct BimacPoly **out);

/**
 * `P_Lambda` for a superpartition written `"a1,a2,...;s1,s2,..."` in `n` variables.
 */
enum BimacStatus bimac_p_new(const char *spart, size_t n, struct BimacPoly **out);

void bimac_poly_free(struct BimacPoly *p);

enum BimacStatus bimac_poly_nvars(const struct BimacPoly *p, size_t *out);

enum BimacStatus bimac_poly_nterms(const struct BimacPoly *p, size_t *out);

/**
 * The coefficient of `x^exps`, where `exps` has one entry per variable.
 */
enum BimacStatus bimac_poly_coefficient(const struct BimacPoly *p,
                                        const uint32_t *exps,
                                        size_t len,
                                        struct BimacScalar **out);

enum BimacStatus bimac_poly_render(const struct BimacPoly *p, enum BimacFormat format, char **out);

/**
 * Parses a scalar such as `"q*(1-t)/(1-q*t)"`.
 */
enum BimacStatus bimac_scalar_parse(const char *s, struct BimacScalar **out);

void bimac_scalar_free(struct BimacScalar *s);

/**
 * Exact equality of two scalars.
 */
enum BimacStatus bimac_scalar_equal(const struct BimacScalar *a,
                                    const struct BimacScalar *b,
                                    bool *out);

enum BimacStatus bimac_scalar_render(const struct BimacScalar *s,
                                     enum BimacFormat format,
                                     char **out);

/**
 * `u_Omega^sign(P_Lambda)`; a null `at` means `Lambda_0`, evaluated by the closed product.
 */
enum BimacStatus bimac_evaluate(const char *spart,
                                const char *at,
                                size_t n,
                                enum BimacSign sign,
                                struct BimacScalar **out);

/**
 * The Pieri expansion of `e_r P_Lambda` from the explicit coefficients.
 */
enum BimacStatus bimac_pieri(const char *spart,
                             size_t n,
                             size_t r,
                             enum BimacVariant variant,
                             struct BimacExpansion **out);

/**
 * Compares the explicit Pieri expansion with the brute-force one.
 */
enum BimacStatus bimac_pieri_check(const char *spart,
                                   size_t n,
                                   size_t r,
                                   enum BimacVariant variant,
                                   bool *out);

void bimac_expansion_free(struct BimacExpansion *e);

enum BimacStatus bimac_expansion_len(const struct BimacExpansion *e, size_t *out);

/**
 * The superpartition `Omega` of term `i`, as an owned string.
 */
enum BimacStatus bimac_expansion_omega(const struct BimacExpansion *e, size_t i, char **out);

enum BimacStatus bimac_expansion_coeff(const struct BimacExpansion *e,
                                       size_t i,
                                       struct BimacScalar **out);

/**
 * Runs the named suite (`hecke`, `eigen`, `symmetry`, `evaluation` or `pieri`).
 */
enum BimacStatus bimac_verify(const char *suite, size_t n, uint32_t deg, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIMAC_H */
