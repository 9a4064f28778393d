#ifndef INSTANTON_H
#define INSTANTON_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DwStatus {
  DW_STATUS_OK = 0,
  DW_STATUS_NULL_POINTER = 1,
  DW_STATUS_INVALID_ARGUMENT = 2,
  DW_STATUS_NO_INSTANTON = 3,
  DW_STATUS_SINGULAR_POINT = 4,
  DW_STATUS_NUMERICAL_FAILURE = 5,
  DW_STATUS_PANIC = 6,
} DwStatus;

/**
 * A finite-size instanton with its solved integration constant.
 */
typedef struct DwInstanton DwInstanton;

/**
 * Model parameters `(M, ω, δ, ħ)`.
 */
typedef struct DwParams DwParams;

/**
 * Result of the full tunneling pipeline at one size.
 */
typedef struct DwReport DwReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *dw_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *dw_last_error(void);

enum DwStatus dw_params_new(double mass,
                            double omega,
                            double delta,
                            double hbar,
                            struct DwParams **out);

void dw_params_free(struct DwParams *params);

/**
 * `V(x)`.
 */
enum DwStatus dw_potential(const struct DwParams *params, double x, double *out);

/**
 * Infinite-size tunneling frequency `Ω∞`.
 */
enum DwStatus dw_omega_infinity(const struct DwParams *params, double *out);

/**
 * Kink action on the infinite line.
 */
enum DwStatus dw_asymptotic_action(const struct DwParams *params, double *out);

/**
 * Complete elliptic integral `K(s)` for `0 <= s² < 1`.
 */
enum DwStatus dw_complete_k(double s_squared, double *out);

/**
 * `sn, cn, dn` at argument `u` and parameter `s²`.
 */
enum DwStatus dw_jacobi(double u, double s_squared, double *sn, double *cn, double *dn);

/**
 * Solve for the instanton that reaches the wells at `τ = ±L/2`.
 */
enum DwStatus dw_instanton_solve(const struct DwParams *params,
                                 double size,
                                 struct DwInstanton **out);

void dw_instanton_free(struct DwInstanton *inst);

/**
 * Integration constant `E`.
 */
enum DwStatus dw_instanton_energy(const struct DwInstanton *inst, double *out);

enum DwStatus dw_instanton_position(const struct DwInstanton *inst, double tau, double *out);

enum DwStatus dw_instanton_velocity(const struct DwInstanton *inst, double tau, double *out);

/**
 * Run the full pipeline at size `L` with default options.
 */
enum DwStatus dw_report_finite(const struct DwParams *params, double size, struct DwReport **out);

void dw_report_free(struct DwReport *report);

/**
 * `Ω(L)`.
 */
enum DwStatus dw_report_omega(const struct DwReport *report, double *out);

enum DwStatus dw_report_action(const struct DwReport *report, double *out);

/**
 * Amplitude, or `DW_STATUS_INVALID_ARGUMENT` when the report has none.
 */
enum DwStatus dw_report_amplitude(const struct DwReport *report, double *out);

/**
 * Serialize the report as JSON. Release the string with [`dw_string_free`].
 */
enum DwStatus dw_report_to_json(const struct DwReport *report, char **out);

void dw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INSTANTON_H */
