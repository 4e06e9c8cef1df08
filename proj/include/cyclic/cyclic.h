/* C interface to the cyclic-cover library. All reports are UTF-8 JSON strings
 * owned by the caller and released with cyclic_string_free. */
#ifndef CYCLIC_CYCLIC_H
#define CYCLIC_CYCLIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define CYCLIC_API __attribute__((visibility("default")))
#else
#define CYCLIC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cyclic_status {
    CYCLIC_OK = 0,
    CYCLIC_E_INVALID_ARGUMENT = 1,
    CYCLIC_E_NUMERICAL = 2,
    CYCLIC_E_INTERNAL = 3
} cyclic_status;

typedef enum cyclic_exponent_form {
    CYCLIC_FORM_STATED = 0,    /* exponents q + gamma/2 over ordered pairs */
    CYCLIC_FORM_CORRECTED = 1  /* q + gamma/2 - (N-1)^2/(4N) over unordered pairs */
} cyclic_exponent_form;

typedef struct cyclic_options {
    int quad_order;     /* Gauss-Legendre nodes per piece */
    double theta_tol;   /* theta truncation tolerance */
    double tol;         /* verification tolerance (derivative identity, constancy) */
    uint64_t seed;      /* homology layout and random divisor draws */
    int exponent_form;  /* cyclic_exponent_form used for PASS/FAIL in cyclic_verify */
} cyclic_options;

/* Opaque curve handle. */
typedef struct cyclic_curve cyclic_curve;

CYCLIC_API cyclic_options cyclic_options_default(void);

/* Parses a JSON configuration (keys N, R, lambda, optional base_x, points,
 * deformation). On failure *out is NULL and the last error names the key. */
CYCLIC_API cyclic_status cyclic_curve_open(const char* config_json, cyclic_curve** out);
CYCLIC_API void cyclic_curve_free(cyclic_curve* curve);

CYCLIC_API cyclic_status cyclic_curve_genus(const cyclic_curve* curve, int* genus);

/* Admissible beta vectors (or every vector satisfying the congruence when
 * all_congruent is nonzero) with their tau-profiles. */
CYCLIC_API cyclic_status cyclic_enumerate(const cyclic_curve* curve, int all_congruent, char** report);

CYCLIC_API cyclic_status cyclic_periods(const cyclic_curve* curve, const cyclic_options* options, char** report);
CYCLIC_API cyclic_status cyclic_abel(const cyclic_curve* curve, const cyclic_options* options, char** report);
CYCLIC_API cyclic_status cyclic_theta(const cyclic_curve* curve, const cyclic_options* options, char** report);
CYCLIC_API cyclic_status cyclic_kernels(const cyclic_curve* curve, const cyclic_options* options, char** report);

/* Thomae checks for one beta (beta_len = m) or, with beta == NULL, every
 * admissible beta. *all_pass is set to 1 when every check passes. */
CYCLIC_API cyclic_status cyclic_verify(const cyclic_curve* curve, const cyclic_options* options, const int* beta,
                            size_t beta_len, char** report, int* all_pass);

/* Message of the last failed call on this thread ("" if none). */
CYCLIC_API const char* cyclic_last_error(void);
CYCLIC_API const char* cyclic_status_string(cyclic_status status);
CYCLIC_API void cyclic_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
