#ifndef STABLY_DISTINCT_H
#define STABLY_DISTINCT_H

#include <stddef.h>
#include <stdint.h>

#if defined(SD_BUILDING)
#define SD_API __attribute__((visibility("default")))
#else
#define SD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values other than SD_OK leave output arguments untouched;
   sd_last_error() describes the failure on the calling thread. */
typedef enum sd_status {
  SD_OK = 0,
  SD_ERR_INVALID_ARGUMENT = 1,
  SD_ERR_PARSE = 2,
  SD_ERR_DIVISION_BY_ZERO = 3,
  SD_ERR_MIXED_DISCRIMINANT = 4,
  SD_ERR_NOT_A_SQUARE = 5,
  SD_ERR_SIGNATURE_MISMATCH = 6,
  SD_ERR_UNKNOWN_VARIABLE = 7,
  SD_ERR_NOT_DIVISIBLE = 8,
  SD_ERR_RESOURCE_LIMIT = 9,
  SD_ERR_EXCEEDED_CAP = 10,
  SD_ERR_NOT_A_MULTIPLE = 11,
  SD_ERR_DIMENSION_MISMATCH = 12,
  SD_ERR_INVALID_WITNESS = 13,
  SD_ERR_PRECONDITION = 14,
  SD_ERR_NONZERO_CONSTANT_TERM = 15,
  SD_ERR_INTERNAL = 99
} sd_status;

typedef struct sd_poly sd_poly;
typedef struct sd_spec sd_spec;
typedef struct sd_verdict sd_verdict;
typedef struct sd_certificate sd_certificate;

typedef struct sd_check_options {
  uint64_t seed;
  unsigned samples; /* random points per identity, 0 disables sampling */
} sd_check_options;

SD_API const char* sd_version(void);
SD_API const char* sd_status_name(sd_status status);
/* Message of the last failing call on this thread ("" if none). */
SD_API const char* sd_last_error(void);
/* Frees strings returned through char** outputs. */
SD_API void sd_string_free(char* s);
/* Maximum number of distinct terms in an intermediate polynomial. */
SD_API sd_status sd_set_term_limit(size_t limit);

/* Polynomials in Q[x1..xn, y, z] (with_w = 0) or Q[x1..xn, y, z, w]. */
SD_API sd_status sd_poly_parse(int n, int with_w, const char* text, sd_poly** out);
SD_API void sd_poly_free(sd_poly* p);
SD_API sd_status sd_poly_to_string(const sd_poly* p, char** out);
SD_API sd_status sd_poly_add(const sd_poly* a, const sd_poly* b, sd_poly** out);
SD_API sd_status sd_poly_sub(const sd_poly* a, const sd_poly* b, sd_poly** out);
SD_API sd_status sd_poly_mul(const sd_poly* a, const sd_poly* b, sd_poly** out);
SD_API sd_status sd_poly_pow(const sd_poly* a, unsigned exponent, sd_poly** out);
/* SD_ERR_NOT_DIVISIBLE when b does not divide a. */
SD_API sd_status sd_poly_exact_divide(const sd_poly* a, const sd_poly* b, sd_poly** out);
SD_API sd_status sd_poly_equal(const sd_poly* a, const sd_poly* b, int* out);

/* The level set V(P_q - c); q is a comma-separated coefficient list,
   constant term first, and c is field-element text such as "1/2". */
SD_API sd_status sd_spec_create(int n, const char* q_csv, const char* c, sd_spec** out);
SD_API sd_status sd_spec_from_json(const char* json, sd_spec** out);
SD_API sd_status sd_spec_to_json(const sd_spec* spec, char** out);
SD_API void sd_spec_free(sd_spec* spec);
/* P_q - c */
SD_API sd_status sd_spec_relation(const sd_spec* spec, sd_poly** out);
/* "V_{a,b}" */
SD_API sd_status sd_classify(const sd_spec* spec, char** out);
SD_API sd_status sd_isomorphic(const sd_spec* a, const sd_spec* b, int* out);
/* Normal form of p modulo P_q - c. */
SD_API sd_status sd_reduce(const sd_spec* spec, const sd_poly* p, sd_poly** out);
/* The derivation Delta of the spec applied to p. */
SD_API sd_status sd_delta_apply(const sd_spec* spec, const sd_poly* p, sd_poly** out);
/* Smallest m with Delta^m(p) = 0 modulo the relation; SD_ERR_EXCEEDED_CAP past cap. */
SD_API sd_status sd_delta_nilpotency(const sd_spec* spec, const sd_poly* p, unsigned cap, unsigned* out);

/* Hypersurface equivalence; ambient_d may be NULL (rationals only). */
SD_API sd_status sd_decide_equivalence(const sd_spec* a, const sd_spec* b, const char* ambient_d, sd_verdict** out);
/* "Equivalent", "NotEquivalent" or "NotDecidableInField" */
SD_API sd_status sd_verdict_name(const sd_verdict* v, char** out);
SD_API sd_status sd_verdict_to_json(const sd_verdict* v, char** out);
SD_API void sd_verdict_free(sd_verdict* v);

/* Certificates. opts may be NULL (seed 0, 100 samples). */
SD_API sd_status sd_verify_fiber(const sd_spec* spec, const sd_check_options* opts, sd_certificate** out);
SD_API sd_status sd_verify_stable(int n, const char* q_csv, const sd_check_options* opts, sd_certificate** out);
/* c_samples_csv may be NULL for the default levels 0, 1, 2, -1, 1/2. */
SD_API sd_status sd_verify_theorem(int n, int k_max, const char* c_samples_csv, const sd_check_options* opts,
                            sd_certificate** out);
SD_API sd_status sd_verify_equivalence(const sd_spec* a, const sd_spec* b, const char* ambient_d,
                                const sd_check_options* opts, sd_certificate** out);
SD_API sd_status sd_verify_biholomorphism(int n, unsigned order, const sd_check_options* opts, sd_certificate** out);
SD_API sd_status sd_certificate_passed(const sd_certificate* cert, int* out);
SD_API sd_status sd_certificate_to_json(const sd_certificate* cert, char** out);
SD_API sd_status sd_certificate_to_text(const sd_certificate* cert, char** out);
SD_API void sd_certificate_free(sd_certificate* cert);

#ifdef __cplusplus
}
#endif

#endif /* STABLY_DISTINCT_H */
