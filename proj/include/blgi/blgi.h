/*
 * Copyright 2026 The blgi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the weak-measurement Bell-Leggett-Garg simulator and
 * auditor. All objects are opaque handles created and destroyed through this
 * API. Every fallible call returns a blgi_status; on failure a message is
 * available from blgi_last_error() on the calling thread until the next call.
 */

#ifndef BLGI_BLGI_H_
#define BLGI_BLGI_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(BLGI_BUILDING_LIBRARY)
#define BLGI_API __attribute__((visibility("default")))
#else
#define BLGI_API
#endif

typedef enum blgi_status {
  BLGI_OK = 0,
  BLGI_ERR_INVALID_ARGUMENT = 1, /* precondition or range violation */
  BLGI_ERR_IO = 2,               /* file open/read/write/parse failure */
  BLGI_ERR_MEASUREMENT = 3,      /* sampled a vanishing measurement branch */
  BLGI_ERR_MALFORMED = 4,        /* records inconsistent with the trial schema */
  BLGI_ERR_INTERNAL = 5
} blgi_status;

typedef enum blgi_bell_kind { BLGI_BELL_PHI_PLUS = 0, BLGI_BELL_PSI_MINUS = 1 } blgi_bell_kind;

typedef enum blgi_verdict {
  BLGI_VERDICT_CONSISTENT = 0,
  BLGI_VERDICT_REJECT = 1,
  BLGI_VERDICT_INCONCLUSIVE = 2
} blgi_verdict;

typedef enum blgi_post_selection {
  BLGI_POSTSELECT_NONE = 0,
  BLGI_POSTSELECT_BOTH_PREDICTED_PLUS = 1
} blgi_post_selection;

typedef struct blgi_settings blgi_settings;
typedef struct blgi_records blgi_records;
typedef struct blgi_predictions blgi_predictions;
typedef struct blgi_sweep blgi_sweep;
typedef struct blgi_manifest blgi_manifest;

typedef struct blgi_trial_record {
  uint64_t trial_index;
  uint32_t settings_id;
  double raw1, raw2;
  double alpha1, alpha2;
  int beta1, beta2;
  uint64_t seed;
} blgi_trial_record;

typedef struct blgi_prediction_record {
  uint64_t trial_index;
  uint32_t settings_id;
  double trajectory_mean1, trajectory_mean2;
  int predicted1, predicted2;
  int actual1, actual2;
  uint64_t seed;
} blgi_prediction_record;

typedef struct blgi_correlator {
  double value;
  double std_error;
  uint64_t count;
} blgi_correlator;

typedef struct blgi_chsh_report {
  blgi_correlator e11, e12, e21, e22;
  double chsh;
  double chsh_std_error;
} blgi_chsh_report;

typedef struct blgi_audit_verdict {
  double chsh_value;
  double chsh_std_error;
  double threshold_sigmas;
  blgi_verdict verdict;
  uint64_t count;
  blgi_chsh_report report;
} blgi_audit_verdict;

typedef struct blgi_accuracy {
  double accuracy;
  double lower; /* Wilson 95% interval */
  double upper;
  uint64_t matches;
  uint64_t total;
} blgi_accuracy;

typedef struct blgi_theorem_row {
  int a1, a2, b1, b2;
  int term;
} blgi_theorem_row;

typedef struct blgi_theorem_report {
  blgi_theorem_row rows[16];
  int plus_two;
  int minus_two;
  double mean_term;
} blgi_theorem_report;

typedef struct blgi_sweep_row {
  double v;
  uint32_t settings_id;
  double exact_chsh;
  double empirical_chsh;
  double chsh_std_error;
  blgi_verdict verdict;
} blgi_sweep_row;

/* ---- library ---------------------------------------------------------- */

BLGI_API const char* blgi_version(void);
BLGI_API const char* blgi_last_error(void);
BLGI_API const char* blgi_verdict_name(blgi_verdict verdict);

/* ---- settings --------------------------------------------------------- */

/* Phi+, a1 = 0, a2 = 90, b1 = 45, b2 = -45 degrees, V = 0.2, noise off. */
BLGI_API blgi_status blgi_settings_create(blgi_settings** out);
BLGI_API void blgi_settings_destroy(blgi_settings* settings);
BLGI_API blgi_status blgi_settings_set_angles_deg(blgi_settings* settings, double a1, double a2, double b1,
                                                  double b2);
BLGI_API blgi_status blgi_settings_set_coupling(blgi_settings* settings, double v);
BLGI_API blgi_status blgi_settings_set_noise(blgi_settings* settings, double bias, double sigma);
BLGI_API blgi_status blgi_settings_set_bell(blgi_settings* settings, blgi_bell_kind kind);
BLGI_API blgi_status blgi_settings_set_id(blgi_settings* settings, uint32_t id);

/* ---- theorem ---------------------------------------------------------- */

BLGI_API blgi_status blgi_verify_theorem(blgi_theorem_report* out);

/* ---- trial simulation and records ------------------------------------ */

/* Runs trials [0, trials); output does not depend on `workers` (0 = all cores). */
BLGI_API blgi_status blgi_simulate(const blgi_settings* settings, uint64_t trials, uint64_t master_seed,
                                   unsigned workers, blgi_records** out);
BLGI_API blgi_status blgi_records_read_csv(const char* path, blgi_records** out);
BLGI_API blgi_status blgi_records_write_csv(const blgi_records* records, const char* path);
BLGI_API uint64_t blgi_records_count(const blgi_records* records);
BLGI_API blgi_status blgi_records_get(const blgi_records* records, uint64_t index, blgi_trial_record* out);
BLGI_API blgi_status blgi_records_chsh(const blgi_records* records, blgi_chsh_report* out);
BLGI_API void blgi_records_destroy(blgi_records* records);

/* Exact value from branch enumeration; no sampling. */
BLGI_API blgi_status blgi_exact_chsh(const blgi_settings* settings, double* out);

/* ---- audit ------------------------------------------------------------ */

BLGI_API blgi_status blgi_audit(const blgi_records* records, double v, double threshold_sigmas,
                                blgi_audit_verdict* out);
/* Writes the verdict as a single JSON object into buf (NUL-terminated). If
 * the buffer is too small nothing is written; *needed always receives the
 * required size including the terminator. */
BLGI_API blgi_status blgi_audit_verdict_json(const blgi_audit_verdict* verdict, char* buf, size_t size,
                                             size_t* needed);

/* ---- prediction protocol --------------------------------------------- */

/* Couples along the settings' b axes (a_i must equal b_i). */
BLGI_API blgi_status blgi_predict(const blgi_settings* settings, double system_v, double readout_v,
                                  uint64_t steps, uint64_t trials, uint64_t master_seed, unsigned workers,
                                  blgi_predictions** out);
BLGI_API blgi_status blgi_predictions_write_csv(const blgi_predictions* predictions, const char* path);
BLGI_API uint64_t blgi_predictions_count(const blgi_predictions* predictions);
BLGI_API blgi_status blgi_predictions_get(const blgi_predictions* predictions, uint64_t index,
                                          blgi_prediction_record* out);
BLGI_API blgi_status blgi_predictions_accuracy(const blgi_predictions* predictions, blgi_accuracy* out);
BLGI_API void blgi_predictions_destroy(blgi_predictions* predictions);

BLGI_API blgi_status blgi_post_protocol_chsh(const blgi_settings* settings, double system_v, double readout_v,
                                             uint64_t steps, uint64_t trials, uint64_t master_seed,
                                             unsigned workers, blgi_post_selection post_selection,
                                             blgi_chsh_report* out);
BLGI_API blgi_status blgi_exact_post_protocol_chsh(const blgi_settings* settings, double system_v, double* out);
BLGI_API blgi_status blgi_exact_prediction_accuracy(const blgi_settings* settings, double system_v,
                                                    double readout_v, uint64_t steps, double* out);

/* ---- V sweep ---------------------------------------------------------- */

BLGI_API blgi_status blgi_sweep_run(const blgi_settings* settings, const double* v_values, size_t count,
                                    uint64_t trials_per_point, uint64_t master_seed, unsigned workers,
                                    double threshold_sigmas, blgi_sweep** out);
BLGI_API size_t blgi_sweep_count(const blgi_sweep* sweep);
BLGI_API blgi_status blgi_sweep_get(const blgi_sweep* sweep, size_t index, blgi_sweep_row* out);
BLGI_API blgi_status blgi_sweep_write_csv(const blgi_sweep* sweep, const char* path);
BLGI_API void blgi_sweep_destroy(blgi_sweep* sweep);

/* ---- run manifest ----------------------------------------------------- */

/* Records the start timestamp. */
BLGI_API blgi_status blgi_manifest_create(const char* command, uint64_t master_seed, blgi_manifest** out);
BLGI_API blgi_status blgi_manifest_set_param(blgi_manifest* manifest, const char* key, const char* value);
BLGI_API blgi_status blgi_manifest_add_output(blgi_manifest* manifest, const char* path);
/* Stamps the finish time and writes one JSON object to `path`. */
BLGI_API blgi_status blgi_manifest_write(blgi_manifest* manifest, const char* path);
BLGI_API void blgi_manifest_destroy(blgi_manifest* manifest);

#ifdef __cplusplus
}
#endif

#endif /* BLGI_BLGI_H_ */
