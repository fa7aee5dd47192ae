/* C interface to the stancelp library: policy-stance indicators and local
 * projection impulse responses. All strings are UTF-8. Functions returning
 * slp_status record a JSON error description retrievable on the same thread
 * with slp_last_error_json(). */
#ifndef STANCELP_STANCELP_H_
#define STANCELP_STANCELP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLP_API __declspec(dllexport)
#else
#define SLP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slp_status {
  SLP_OK = 0,
  SLP_ERR_IO = 1,
  SLP_ERR_ENCODING = 2,
  SLP_ERR_EMPTY_TRANSCRIPT = 3,
  SLP_ERR_PARSE = 4,
  SLP_ERR_DANGLING_LABEL = 5,
  SLP_ERR_DUPLICATE_LABEL = 6,
  SLP_ERR_INVALID_LEXICON = 7,
  SLP_ERR_EMPTY_EVENT = 8,
  SLP_ERR_EMPTY_SERIES = 9,
  SLP_ERR_INVALID_PRICE = 10,
  SLP_ERR_DUPLICATE_DATE = 11,
  SLP_ERR_NO_ANCHOR = 12,
  SLP_ERR_INSUFFICIENT_HORIZON = 13,
  SLP_ERR_INSUFFICIENT_SAMPLE = 14,
  SLP_ERR_COLLINEAR_DESIGN = 15,
  SLP_ERR_INVALID_CONFIG = 16,
  SLP_ERR_NO_ESTIMABLE_HORIZON = 17,
  SLP_ERR_INTERNAL = 18,
  SLP_ERR_INVALID_ARGUMENT = 100
} slp_status;

SLP_API const char* slp_version(void);
SLP_API const char* slp_status_name(slp_status status);

/* {"error": {"code": .., "message": .., "details": [..]}} for the last failed
 * call on this thread, or "" if none. Valid until the next call. */
SLP_API const char* slp_last_error_json(void);

/* Pipeline --------------------------------------------------------------- */

typedef struct slp_pipeline slp_pipeline;

/* Parses and validates a run config. Relative paths resolve against base_dir
 * (may be NULL or "" for the working directory). */
SLP_API slp_status slp_pipeline_create(const char* config_json, const char* base_dir,
                                       slp_pipeline** out);
SLP_API void slp_pipeline_destroy(slp_pipeline* pipeline);

/* stage: segment, label, aggregate, outcomes, estimate, plot or run. */
SLP_API slp_status slp_pipeline_run_stage(slp_pipeline* pipeline, const char* stage);

/* Human-readable summary of the last successful stage; owned by the handle. */
SLP_API const char* slp_pipeline_last_report(const slp_pipeline* pipeline);

/* Sentence segmentation -------------------------------------------------- */

typedef struct slp_sentences slp_sentences;

/* Parses a transcript (speaker-turn format) and segments it into sentences. */
SLP_API slp_status slp_segment_transcript(const char* text, size_t length,
                                          slp_sentences** out);
SLP_API size_t slp_sentences_count(const slp_sentences* sentences);
/* NULL when index is out of range. */
SLP_API const char* slp_sentences_text(const slp_sentences* sentences, size_t index);
SLP_API const char* slp_sentences_speaker(const slp_sentences* sentences, size_t index);
SLP_API size_t slp_sentences_turn(const slp_sentences* sentences, size_t index);
SLP_API void slp_sentences_destroy(slp_sentences* sentences);

/* Numerics --------------------------------------------------------------- */

/* (favorable - adverse) / (favorable + adverse). When both counts are zero,
 * *missing is set to 1 and *score to 0 (or *missing to 0 with zero_fill). */
SLP_API slp_status slp_polarity_score(uint64_t favorable, uint64_t adverse, int zero_fill,
                                      double* score, int* missing);

/* Least squares of y on a row-major rows x cols design (no intercept added).
 * coefficients must hold cols values; r_squared may be NULL. */
SLP_API slp_status slp_ols_fit(const double* design, size_t rows, size_t cols, const double* y,
                               double* coefficients, double* r_squared);

#ifdef __cplusplus
}
#endif

#endif  // STANCELP_STANCELP_H_
