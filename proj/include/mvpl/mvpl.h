/*
 * Copyright 2026 The mvpl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the mvpl shared library: multi-view pseudo-labeling for
 * semi-supervised speech classification.
 *
 * Two layers are exposed:
 *   - numeric primitives on raw buffers (Gaussian estimation, the symmetric
 *     PSD square root and the Frechet distance between Gaussian summaries),
 *     behind an opaque handle;
 *   - coarse pipeline entry points mirroring the CLI subcommands (synth,
 *     fad, pseudo-label, train, report), driven by JSON config files and an
 *     output directory.
 *
 * Every function returns MVPL_OK on success; on failure a thread-local
 * message is available via mvpl_last_error(). Returned summary strings are
 * heap-allocated and must be released with mvpl_string_free().
 */

#ifndef MVPL_H
#define MVPL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MVPL_API __declspec(dllexport)
#else
#define MVPL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvpl_rc {
  MVPL_OK = 0,
  MVPL_E_INVALID_INPUT,
  MVPL_E_INVALID_DATA,
  MVPL_E_INSUFFICIENT_SAMPLES,
  MVPL_E_NOT_SYMMETRIC,
  MVPL_E_NOT_PSD,
  MVPL_E_DIMENSION_MISMATCH,
  MVPL_E_NUMERICAL_FAILURE,
  MVPL_E_INCOMPLETE_REFERENCE,
  MVPL_E_NO_CLASSES,
  MVPL_E_UNKNOWN_CLASS,
  MVPL_E_DUPLICATE_ITEM,
  MVPL_E_COVERAGE_MISMATCH,
  MVPL_E_DEGENERATE_TRAINING_SET,
  MVPL_E_TRAINING_DIVERGED,
  MVPL_E_EMPTY_TRAINING_SET,
  MVPL_E_INVALID_SPLIT,
  MVPL_E_INVALID_CONFIG,
  MVPL_E_UNRECOGNIZED_FORMAT,
  MVPL_E_CORRUPT_FILE,
  MVPL_E_IO_FAILURE,
  MVPL_E_UNKNOWN
} mvpl_rc;

MVPL_API const char* mvpl_version(void);
MVPL_API const char* mvpl_rc_name(mvpl_rc rc);

/* Process exit code the CLI uses for this result: 0 for MVPL_OK, 2 for
 * configuration/input validation failures, 1 for runtime errors. */
MVPL_API int mvpl_rc_exit_code(mvpl_rc rc);

/* Thread-local message describing the most recent failure in this thread;
 * empty string when the last call succeeded. */
MVPL_API const char* mvpl_last_error(void);

MVPL_API void mvpl_string_free(char* s);

/* ------------------------------------------------------------------------
 * Gaussian summaries and the Frechet distance
 * --------------------------------------------------------------------- */

typedef struct mvpl_gaussian mvpl_gaussian;

/* Estimates mean and unbiased covariance (+ ridge * I) from `rows` vectors
 * of length `dim`, row-major. Needs rows >= 2 and ridge >= 0. */
MVPL_API mvpl_rc mvpl_gaussian_estimate(const double* data, uint32_t rows,
                                        uint32_t dim, double ridge,
                                        mvpl_gaussian** out);

/* Wraps known moments; `covariance` is dim x dim row-major and must be
 * symmetric within 1e-9. */
MVPL_API mvpl_rc mvpl_gaussian_from_moments(const double* mean,
                                            const double* covariance,
                                            uint32_t dim, mvpl_gaussian** out);

MVPL_API uint32_t mvpl_gaussian_dim(const mvpl_gaussian* g);
MVPL_API void mvpl_gaussian_mean(const mvpl_gaussian* g, double* out);
MVPL_API void mvpl_gaussian_covariance(const mvpl_gaussian* g, double* out);
MVPL_API void mvpl_gaussian_free(mvpl_gaussian* g);

MVPL_API mvpl_rc mvpl_frechet_distance(const mvpl_gaussian* left,
                                       const mvpl_gaussian* right, double* out);

/* Symmetric PSD square root of a dim x dim row-major matrix into `out`
 * (also dim x dim row-major; may alias the input). */
MVPL_API mvpl_rc mvpl_sqrt_psd(const double* matrix, uint32_t dim, double* out);

/* ------------------------------------------------------------------------
 * Pipeline runs
 * --------------------------------------------------------------------- */

/* Optional per-invocation overrides of config-file values. Zero-initialize
 * and set the has_* flags for the fields to apply; `strategy` may be NULL. */
typedef struct mvpl_overrides {
  int32_t has_seed;
  uint64_t seed;
  int32_t has_label_rate;
  double label_rate;
  const char* strategy;
} mvpl_overrides;

/* Each run reads a JSON config, writes its artifacts under `out_dir`,
 * appends an audit record to out_dir/runs.jsonl, and (when `summary` is
 * non-NULL) returns a human-readable summary. */

MVPL_API mvpl_rc mvpl_run_synth(const char* config_path, const char* out_dir,
                                const mvpl_overrides* overrides, char** summary);

/* `item_id` restricts scoring to one pool item (NULL scores the whole pool). */
MVPL_API mvpl_rc mvpl_run_fad(const char* config_path, const char* out_dir,
                              const char* item_id,
                              const mvpl_overrides* overrides, char** summary);

MVPL_API mvpl_rc mvpl_run_pseudo_label(const char* config_path,
                                       const char* out_dir,
                                       const mvpl_overrides* overrides,
                                       char** summary);

MVPL_API mvpl_rc mvpl_run_train(const char* config_path, const char* out_dir,
                                const mvpl_overrides* overrides, char** summary);

MVPL_API mvpl_rc mvpl_run_report(const char* const* input_paths, size_t input_count,
                                 const char* out_dir, char** summary);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MVPL_H */
