#ifndef CACFORGE_H
#define CACFORGE_H

/* C interface to the cacforge library. Results are returned as JSON text
 * owned by the caller and released with cacforge_string_free. On any status
 * other than CACFORGE_OK, cacforge_last_error() describes the failure
 * (thread-local, valid until the next call on the same thread). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CACFORGE_API __declspec(dllexport)
#else
#define CACFORGE_API __attribute__((visibility("default")))
#endif

typedef enum cacforge_status {
  CACFORGE_OK = 0,
  CACFORGE_DOMAIN_ERROR = 1,        /* invalid input for the operation */
  CACFORGE_VERIFICATION_FAILED = 2, /* a check did not pass, e.g. a code conflict */
  CACFORGE_INVALID_ARGUMENT = 3,    /* null pointer or malformed call */
  CACFORGE_INTERNAL_ERROR = 4
} cacforge_status;

typedef struct cacforge_field cacforge_field;
typedef struct cacforge_code cacforge_code;

CACFORGE_API const char* cacforge_version(void);
CACFORGE_API const char* cacforge_last_error(void);
CACFORGE_API void cacforge_string_free(char* s);

/* modulus: NULL for the default, else coefficients "c0,c1,...,1" constant term first. */
CACFORGE_API cacforge_status cacforge_field_create(uint64_t q, const char* modulus, cacforge_field** out);
CACFORGE_API void cacforge_field_destroy(cacforge_field* field);
CACFORGE_API cacforge_status cacforge_field_describe(const cacforge_field* field, char** json_out);
CACFORGE_API cacforge_status cacforge_field_parse(const cacforge_field* field, const char* text, uint32_t* code_out);
CACFORGE_API cacforge_status cacforge_field_format(const cacforge_field* field, uint32_t code, char** text_out);

/* First generator (ascending exponent) with a solution, plus counts for it. */
CACFORGE_API cacforge_status cacforge_solve(const cacforge_field* field, uint64_t ell, int require_nonzero_xy,
                                            char** json_out);

/* Counts for one generator g (NULL: the field's reference generator), by
 * enumeration and, when ell is a proper divisor of q-1, by character sums.
 * tolerance <= 0 selects the default rounding tolerance for character sums. */
CACFORGE_API cacforge_status cacforge_count(const cacforge_field* field, uint64_t ell, const char* g, double tolerance,
                                            char** json_out);
/* Sum of N_g over all generators, by enumeration and by the reduced formula. */
CACFORGE_API cacforge_status cacforge_count_all(const cacforge_field* field, uint64_t ell, double tolerance,
                                                char** json_out);
/* Substitutes (g, x, y) into g^2 x^ell + g y^ell + 1; VERIFICATION_FAILED unless it is 0 and g generates. */
CACFORGE_API cacforge_status cacforge_check(const cacforge_field* field, uint64_t ell, const char* g, const char* x,
                                            const char* y, char** json_out);

CACFORGE_API cacforge_status cacforge_bound(uint64_t ell, char** json_out);
CACFORGE_API cacforge_status cacforge_sizes(uint64_t p, char** json_out);
CACFORGE_API cacforge_status cacforge_ramanujan(uint64_t n, int64_t m, char** json_out);

CACFORGE_API cacforge_status cacforge_cac_build(uint64_t p, cacforge_code** out);
CACFORGE_API cacforge_status cacforge_cac_import(const char* json, cacforge_code** out);
/* Fails with VERIFICATION_FAILED for codes with a conflict. */
CACFORGE_API cacforge_status cacforge_cac_export(const cacforge_code* code, char** json_out);
/* Writes the verdict; returns VERIFICATION_FAILED when the code has a conflict. */
CACFORGE_API cacforge_status cacforge_cac_verify(const cacforge_code* code, char** json_out);
/* Triple witness and size sheet for a code made by cacforge_cac_build (null otherwise). */
CACFORGE_API cacforge_status cacforge_cac_details(const cacforge_code* code, char** json_out);
CACFORGE_API void cacforge_code_destroy(cacforge_code* code);

/* ell_filter = 0 scans every odd prime; jobs = 0 uses one thread per core.
 * Writes CSV with columns p,ell0,verdict,g,x,y,ms; ms is 0 unless timing. */
CACFORGE_API cacforge_status cacforge_scan_csv(uint64_t lo, uint64_t hi, uint64_t ell_filter, unsigned jobs,
                                               int timing, char** csv_out);
CACFORGE_API cacforge_status cacforge_scan_json(uint64_t lo, uint64_t hi, uint64_t ell_filter, unsigned jobs,
                                                int timing, char** json_out);
CACFORGE_API cacforge_status cacforge_verify_prime(uint64_t p, int timing, char** json_out);
CACFORGE_API cacforge_status cacforge_p_ell(uint64_t ell, uint64_t lo, unsigned jobs, char** json_out);
CACFORGE_API cacforge_status cacforge_fib_roots(uint64_t limit, char** json_out);

/* corrupt: NULL, or the name of an entry whose expected data is perturbed. */
CACFORGE_API cacforge_status cacforge_selftest(const char* corrupt, char** json_out);
CACFORGE_API cacforge_status cacforge_selftest_list(char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* CACFORGE_H */
