#ifndef FRACWAVE_H
#define FRACWAVE_H

/* Generated by cbindgen from the fracwave-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Classification tags (mirrors the library enum).
 */
typedef enum {
  FW_CLASSIFICATION_GLOBAL_SMALL_DATA = 0,
  FW_CLASSIFICATION_BLOW_UP = 1,
  FW_CLASSIFICATION_INDETERMINATE = 2,
  FW_CLASSIFICATION_BOTH_CONDITIONS_FAIL = 3,
  FW_CLASSIFICATION_INCONSISTENT = 4,
} FwClassification;

/**
 * Status codes returned by every entry point.
 */
typedef enum {
  FW_STATUS_OK = 0,
  FW_STATUS_NULL_POINTER = 1,
  FW_STATUS_INVALID_ARGUMENT = 2,
  FW_STATUS_EVAL_FAILED = 3,
  FW_STATUS_UTF8 = 4,
  FW_STATUS_JSON = 5,
  FW_STATUS_BUFFER_TOO_SMALL = 6,
  FW_STATUS_RUN_FAILED = 7,
  FW_STATUS_PANIC = 8,
} FwStatus;

/**
 * Simulation outcome tag.
 */
typedef enum {
  FW_TERMINATION_COMPLETED = 0,
  FW_TERMINATION_BLEW_UP = 1,
  FW_TERMINATION_ABORTED = 2,
} FwTermination;

/**
 * Opaque fast evaluator of `w -> E_{alpha,beta}(-w)` on `[0, w_max]`.
 */
typedef struct FwMlKernel FwMlKernel;

/**
 * Derived exponents of the global-existence analysis.
 */
typedef struct {
  double delta;
  double delta_lo;
  double delta_hi;
  double r1;
  double r2;
  double s1;
  double s2;
  double sigma1;
  double sigma2;
} FwDerivedExponents;

/**
 * Test-function exponents for one scaling choice.
 */
typedef struct {
  double lambda;
  double delta1;
  double delta2;
} FwBlowupExponents;

/**
 * Library version as a static NUL-terminated string.
 */
const char *fracwave_version(void);

/**
 * Evaluate `E_{alpha,beta}(z)`.
 */
FwStatus fracwave_ml_eval(double alpha, double beta, double z, double *out);

/**
 * `t^{beta-m-1} E_{alpha,beta-m}(lam t^alpha)`, `m` in {0, 1}.
 */
FwStatus fracwave_ml_deriv_reduction(double alpha,
                                     double beta,
                                     double t,
                                     double lam,
                                     uint32_t m,
                                     double *out);

/**
 * Build a kernel evaluator; returns NULL on invalid parameters.
 */
FwMlKernel *fracwave_ml_kernel_new(double alpha, double beta, double w_max);

/**
 * Evaluate `E_{alpha,beta}(-w)` through the handle.
 *
 * # Safety
 * `handle` must come from [`fracwave_ml_kernel_new`] and not be freed.
 */
FwStatus fracwave_ml_kernel_eval_neg(const FwMlKernel *handle, double w, double *out);

/**
 * Release a kernel handle (NULL is a no-op).
 *
 * # Safety
 * `handle` must come from [`fracwave_ml_kernel_new`], freed at most once.
 */
void fracwave_ml_kernel_free(FwMlKernel *handle);

/**
 * Classify a parameter point; writes the classification tag.
 */
FwStatus fracwave_classify(double gamma1,
                           double gamma2,
                           double p,
                           double q,
                           uint32_t dim,
                           FwClassification *out);

/**
 * Full classification report as JSON into a caller buffer (NUL-terminated);
 * `written` receives the byte count excluding the terminator.
 */
FwStatus fracwave_classify_json(double gamma1,
                                double gamma2,
                                double p,
                                double q,
                                uint32_t dim,
                                char *buf,
                                size_t buf_len,
                                size_t *written);

/**
 * Derived exponents at `delta` (pass NaN for the window midpoint).
 */
FwStatus fracwave_derive_exponents(double gamma1,
                                   double gamma2,
                                   double p,
                                   double q,
                                   uint32_t dim,
                                   double delta,
                                   FwDerivedExponents *out);

/**
 * Blow-up test-function exponents for both scaling choices; `out` must
 * hold two elements.
 */
FwStatus fracwave_blowup_exponents(double gamma1,
                                   double gamma2,
                                   double p,
                                   double q,
                                   uint32_t dim,
                                   FwBlowupExponents *out);

/**
 * Run a simulation from a JSON configuration string; artifacts go to
 * `out_dir` when non-NULL. Reports the termination tag and, for blow-up,
 * the estimated time through `t_est` (NaN otherwise).
 *
 * # Safety
 * `config_json` (and `out_dir` when non-NULL) must be NUL-terminated.
 */
FwStatus fracwave_simulate_json(const char *config_json,
                                const char *out_dir,
                                FwTermination *termination,
                                double *t_est);

/**
 * Convenience: a heap copy of the last classification JSON is unnecessary —
 * callers manage buffers — but string results allocated by this library
 * must be released here.
 */
void fracwave_string_free(char *s);

#endif /* FRACWAVE_H */
