/*
 * C interface to the fpspec library: Fourier spectra, additive and
 * multiplicative energies of subsets of F_p, incidence counts and the
 * theorem-verification harness.
 *
 * Objects are opaque handles created by fps_*_create / fps_*_make functions
 * and released with the matching fps_*_destroy. Every fallible call returns
 * an fps_status; on failure fps_last_error() describes the problem (the
 * message is thread-local and valid until the next call on that thread).
 */
#ifndef FPSPEC_FPSPEC_H
#define FPSPEC_FPSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FPS_API __declspec(dllexport)
#else
#  define FPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fps_status {
    FPS_OK = 0,
    FPS_ERR_NOT_PRIME = 1,
    FPS_ERR_EVEN_PRIME,
    FPS_ERR_ZERO_ELEMENT,
    FPS_ERR_BAD_EPSILON,
    FPS_ERR_EMPTY_SET,
    FPS_ERR_ZERO_IN_SET,
    FPS_ERR_TOO_LARGE_FOR_BRUTE,
    FPS_ERR_OUT_OF_RANGE,
    FPS_ERR_NOT_A_DIVISOR,
    FPS_ERR_NOT_A_SUBGROUP,
    FPS_ERR_MEAN_ZERO_VIOLATED,
    FPS_ERR_SIZE_ORDER,
    FPS_ERR_PRECONDITION,
    FPS_ERR_DUPLICATE_ELEMENT,
    FPS_ERR_PRECISION_LOSS,
    FPS_ERR_CONFIG,
    FPS_ERR_IO,
    FPS_ERR_INVALID_ARGUMENT,
    FPS_ERR_NULL_POINTER = 100,
    FPS_ERR_BUFFER_TOO_SMALL,
    FPS_ERR_INTERNAL
} fps_status;

typedef struct fps_field_s* fps_field;
typedef struct fps_set_s* fps_set;
typedef struct fps_table_s* fps_table;
typedef struct fps_rep_s* fps_rep;
typedef struct fps_scene_s* fps_scene;
typedef struct fps_rows_s* fps_rows;

/* Exact nonnegative 128-bit integer split into halves. */
typedef struct fps_u128 {
    uint64_t hi;
    uint64_t lo;
} fps_u128;

typedef enum fps_method { FPS_METHOD_BRUTE = 0, FPS_METHOD_CONVOLUTION, FPS_METHOD_FOURIER } fps_method;
typedef enum fps_rule { FPS_RULE_FULL_SPECTRUM = 0, FPS_RULE_COSET_SEARCH, FPS_RULE_EXPLICIT } fps_rule;

FPS_API const char* fps_last_error(void);
FPS_API const char* fps_status_name(fps_status status);
FPS_API const char* fps_version(void);

/* Decimal rendering of v into buf (NUL terminated). 40 bytes always suffice. */
FPS_API fps_status fps_u128_format(fps_u128 v, char* buf, size_t len);

/* ---- prime field ------------------------------------------------------ */

FPS_API fps_status fps_field_create(uint64_t p, fps_field* out);
FPS_API void fps_field_destroy(fps_field field);
FPS_API uint32_t fps_field_modulus(fps_field field);
FPS_API uint32_t fps_field_generator(fps_field field);
FPS_API fps_status fps_field_dlog(fps_field field, uint32_t x, uint32_t* out);
FPS_API fps_status fps_field_pow(fps_field field, uint64_t e, uint32_t* out);

/* ---- sets ------------------------------------------------------------- */

FPS_API fps_status fps_set_from_values(fps_field field, const int64_t* values, size_t n, fps_set* out);
FPS_API fps_status fps_set_parse_list(fps_field field, const char* text, fps_set* out);
/* Reads the "p=<p>" set file; the header must match the field. */
FPS_API fps_status fps_set_read_file(fps_field field, const char* path, fps_set* out);
FPS_API fps_status fps_set_write_file(fps_set set, const char* path);
FPS_API fps_status fps_set_interval(fps_field field, uint64_t n, fps_set* out);
FPS_API fps_status fps_set_random(fps_field field, uint64_t size, uint64_t seed, int avoid_zero, fps_set* out);
FPS_API fps_status fps_set_subgroup(fps_field field, uint64_t d, fps_set* out);
FPS_API fps_status fps_set_coset(fps_field field, fps_set subgroup, uint32_t lambda, fps_set* out);
FPS_API fps_status fps_set_family(fps_field field, const char* family, uint64_t seed, double size_exponent, fps_set* out);
FPS_API fps_status fps_set_sumset(fps_field field, fps_set a, fps_set b, fps_set* out);
FPS_API fps_status fps_set_product(fps_field field, fps_set a, fps_set b, fps_set* out);
FPS_API void fps_set_destroy(fps_set set);
FPS_API size_t fps_set_size(fps_set set);
/* Copies up to cap sorted elements; returns the number copied. */
FPS_API size_t fps_set_elements(fps_set set, uint32_t* out, size_t cap);

/* ---- Fourier tables and spectra ---------------------------------------- */

/* method: FPS_METHOD_BRUTE selects the direct O(p|A|) evaluation,
 * FPS_METHOD_FOURIER / FPS_METHOD_CONVOLUTION the chirp transform. */
FPS_API fps_status fps_table_create(fps_field field, fps_set a, fps_method method, fps_table* out);
FPS_API void fps_table_destroy(fps_table table);
FPS_API fps_status fps_table_value(fps_table table, uint32_t xi, double* re, double* im, double* mag2);
FPS_API fps_status fps_table_write_csv(fps_table table, const char* path);
FPS_API fps_status fps_table_max_nonzero_magnitude(fps_table table, double* out);
/* Spec_eps(A) in increasing order. Pass elements = NULL to query *count. */
FPS_API fps_status fps_spectrum(fps_table table, double eps, uint32_t* elements, double* magnitudes,
                                size_t cap, size_t* count);

/* ---- energies ---------------------------------------------------------- */

FPS_API fps_status fps_rep_add(fps_field field, fps_set a, fps_set b, int minus, fps_method method, fps_rep* out);
FPS_API fps_status fps_rep_mul(fps_field field, fps_set a, fps_set b, int ratio, fps_rep* out);
FPS_API void fps_rep_destroy(fps_rep rep);
FPS_API size_t fps_rep_length(fps_rep rep);
FPS_API fps_status fps_rep_count(fps_rep rep, size_t index, uint64_t* out);
FPS_API fps_status fps_rep_write_csv(fps_rep rep, const char* path);

FPS_API fps_status fps_additive_energy(fps_field field, fps_set a, fps_set b, fps_method method, fps_u128* out);
FPS_API fps_status fps_balanced_energy(fps_field field, fps_set a, double* fourier, double* identity);
FPS_API fps_status fps_mult_energy(fps_field field, fps_set r, unsigned k, fps_method method, fps_u128* out);
FPS_API fps_status fps_sigma_mult(fps_field field, fps_set r, fps_u128* out);
FPS_API fps_status fps_c4_aggregates(fps_field field, fps_set a, fps_u128* sum, fps_u128* sum_sq);
FPS_API fps_status fps_rep_sq_sum_aa(fps_field field, fps_set a, fps_method method, fps_u128* out);

/* ---- incidences -------------------------------------------------------- */

FPS_API fps_status fps_scene_read_file(const char* path, fps_scene* out);
FPS_API fps_status fps_scene_random(uint64_t q, unsigned dim, size_t n_points, size_t n_surfaces,
                                    uint64_t seed, fps_scene* out);
FPS_API fps_status fps_scene_randomize_weights(fps_scene scene, uint64_t seed, int center_points);
FPS_API fps_status fps_scene_write_file(fps_scene scene, const char* path);
FPS_API void fps_scene_destroy(fps_scene scene);
FPS_API fps_status fps_scene_incidences(fps_scene scene, double* weighted, uint64_t* count);
FPS_API fps_status fps_scene_point_plane(fps_scene scene, double* lhs, double* rhs, int* pass);
FPS_API fps_status fps_scene_collinear_max(fps_scene scene, size_t* k);

typedef struct fps_ratio_report {
    uint64_t incidences;
    uint64_t k;
    double excess;
    double bound;
    double ratio;
} fps_ratio_report;

FPS_API fps_status fps_scene_misha(fps_scene scene, int swap_roles, fps_ratio_report* out);
/* lines: n triples (a, b, d) meaning a x + b y = d. */
FPS_API fps_status fps_line_point(fps_field field, fps_set a, fps_set b, const uint32_t* lines, size_t n,
                                  fps_ratio_report* out);

/* ---- theorem harness --------------------------------------------------- */

/* Row container shared by single verifications and sweeps. */
FPS_API fps_status fps_rows_create(fps_rows* out);
FPS_API void fps_rows_destroy(fps_rows rows);
FPS_API size_t fps_rows_count(fps_rows rows);

typedef struct fps_report {
    char theorem[32];
    char family[32];
    char rule[32];
    uint64_t p;
    uint64_t seed;
    double eps;
    uint64_t set_size;
    double delta;
    uint64_t r_size;
    int precondition_ok;
    int has_lhs_exact;
    fps_u128 lhs_exact;
    double lhs;
    double rhs;
    double ratio;
    double ratio_log;
    char notes[256];
} fps_report;

FPS_API fps_status fps_rows_get(fps_rows rows, size_t index, fps_report* out);

/* Appends one row. theorem is one of main, e4, sigma, zero_sum, aa_plus_aa,
 * example, misha, line_point. rule applies to main and sigma; explicit_r is
 * only read for FPS_RULE_EXPLICIT. */
FPS_API fps_status fps_verify(fps_field field, fps_set a, const char* theorem, double eps, fps_rule rule,
                              fps_set explicit_r, const char* family, uint64_t seed, fps_rows rows);

typedef struct fps_tightness {
    int coset_found;
    uint32_t lambda;
    int e4_exact;
    int e2_exact;
    double max_nonzero_mag;
    double mag_over_sqrt_p;
    double balanced_energy;
    int balanced_inequality;
} fps_tightness;

/* Appends the tightness row for the order-d subgroup and fills *out. */
FPS_API fps_status fps_verify_tightness(fps_field field, uint64_t d, double eps, fps_rows rows,
                                        fps_tightness* out);

/* Runs the sweep described by a config file (NULL: built-in defaults),
 * appending rows in canonical order. */
FPS_API fps_status fps_sweep_run(const char* config_path, unsigned jobs, fps_rows rows);
/* Output path and baseline path named in a config file ("" if absent). */
FPS_API fps_status fps_sweep_config_paths(const char* config_path, char* output, size_t output_len,
                                          char* baseline, size_t baseline_len);
FPS_API fps_status fps_rows_write_csv(fps_rows rows, const char* path);
FPS_API fps_status fps_rows_write_jsonl(fps_rows rows, const char* path);

/* Writes max ratios per (theorem, family) as the blessed baseline. */
FPS_API fps_status fps_baseline_bless(fps_rows rows, const char* path);

typedef struct fps_baseline_entry {
    char theorem[32];
    char family[32];
    double max_ratio;
    double baseline;
    double allowed;
    int pass;
    char notes[64];
} fps_baseline_entry;

/* Compares rows against a baseline file. Fills up to cap entries, sets
 * *count to the total and *failures to the number of failing entries. */
FPS_API fps_status fps_baseline_check(fps_rows rows, const char* path, fps_baseline_entry* entries,
                                      size_t cap, size_t* count, size_t* failures);

typedef struct fps_check {
    char name[64];
    int pass;
    char detail[192];
} fps_check;

/* Runs the built-in identity battery. */
FPS_API fps_status fps_selftest(fps_check* checks, size_t cap, size_t* count, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* FPSPEC_FPSPEC_H */
