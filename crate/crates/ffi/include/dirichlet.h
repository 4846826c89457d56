#ifndef DIRICHLET_H
#define DIRICHLET_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of every call.
typedef enum DirStatus {
  DIR_STATUS_OK = 0,
  DIR_STATUS_NULL_POINTER = 1,
  DIR_STATUS_INVALID_UTF8 = 2,
  DIR_STATUS_INVALID_JSON = 3,
  DIR_STATUS_INVALID_INPUT = 4,
  DIR_STATUS_UNSUPPORTED = 5,
  DIR_STATUS_OUT_OF_RANGE = 6,
  DIR_STATUS_INTERNAL = 7,
  DIR_STATUS_PANIC = 8,
} DirStatus;

typedef enum DirVerdict {
  DIR_VERDICT_HOLDS = 0,
  DIR_VERDICT_FAILS = 1,
  DIR_VERDICT_INCONCLUSIVE = 2,
} DirVerdict;

typedef enum DirKernel {
  // Fejér kernel; the parameter is `x > 0`.
  DIR_KERNEL_FEJER = 0,
  // Poisson kernel; the parameter is `sigma > 0`.
  DIR_KERNEL_POISSON = 1,
} DirKernel;

// Opaque frequency handle.
typedef struct DirFrequency DirFrequency;

// Opaque series handle.
typedef struct DirSeries DirSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next failing call on the same thread.
const char *dir_last_error(void);

// Parses a frequency from JSON such as `{"kind":"log_n"}`.
//
// # Safety
// `json` must be null or a nul-terminated string; `out` must be null or writable.
enum DirStatus dir_frequency_from_json(const char *json, struct DirFrequency **out_handle);

// # Safety
// `handle` must be null or come from [`dir_frequency_from_json`] and not be freed twice.
void dir_frequency_free(struct DirFrequency *handle);

// Writes `λ_1..λ_n` into `buf`, which must hold `n` doubles.
//
// # Safety
// `handle` must be a live handle; `buf` must be valid for `n` writes.
enum DirStatus dir_frequency_materialize(const struct DirFrequency *handle, size_t n, double *buf);

// Trailing-window estimate of `L(λ) = limsup log n / λ_n`. `value` receives
// a representative number (`0` for "at most 0", infinities as IEEE
// infinities); `confidence` tells whether the value is exact.
//
// # Safety
// `handle` must be a live handle; output pointers must be writable.
enum DirStatus dir_frequency_estimate_l(const struct DirFrequency *handle,
                                        size_t n_max,
                                        size_t window,
                                        double *value,
                                        enum DirVerdict *confidence);

// Whether Bohr's theorem holds for the frequency.
//
// # Safety
// `handle` must be a live handle; `out_verdict` must be writable.
enum DirStatus dir_frequency_classify_bohr(const struct DirFrequency *handle,
                                           enum DirVerdict *out_verdict);

// Structure report as a JSON string; release it with [`dir_string_free`].
//
// # Safety
// `handle` must be a live handle; `out_json` must be writable.
enum DirStatus dir_frequency_report_json(const struct DirFrequency *handle, char **out_json);

// Grothendieck–Pietsch nuclearity verdict for the Köthe space of the frequency.
//
// # Safety
// `handle` must be a live handle; `out_verdict` must be writable.
enum DirStatus dir_gp_nuclearity(const struct DirFrequency *handle,
                                 uint32_t k_max,
                                 size_t n_max,
                                 enum DirVerdict *out_verdict);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void dir_string_free(char *s);

// Kernel value at `t`.
//
// # Safety
// `out_value` must be writable.
enum DirStatus dir_kernel_eval(enum DirKernel kind, double param, double t, double *out_value);

// Fourier transform `∫ K(u) e^{-itu} du` of the kernel at `t`.
//
// # Safety
// `out_value` must be writable.
enum DirStatus dir_kernel_ft(enum DirKernel kind, double param, double t, double *out_value);

// Parses a series from JSON `{"frequency": ..., "coefficients": ...}`.
//
// # Safety
// `json` must be null or a nul-terminated string; `out_handle` must be writable.
enum DirStatus dir_series_from_json(const char *json, struct DirSeries **out_handle);

// # Safety
// `handle` must be null or come from [`dir_series_from_json`] and not be freed twice.
void dir_series_free(struct DirSeries *handle);

// `Σ_{λ_n < x} a_n e^{-λ_n s}` at `s = s_re + i s_im`.
//
// # Safety
// `handle` must be a live handle; output pointers must be writable.
enum DirStatus dir_series_partial_sum(const struct DirSeries *handle,
                                      double x,
                                      double s_re,
                                      double s_im,
                                      double *out_re,
                                      double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRICHLET_H */
