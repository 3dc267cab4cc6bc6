// Copyright 2026 The fragmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the fragmark fragile audio watermarking library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a fragmark_status;
 * on failure a human-readable message for the calling thread is available
 * from fragmark_last_error() until the next failing call on that thread.
 * Handles are immutable after creation and may be shared between threads.
 */
#ifndef FRAGMARK_FRAGMARK_H_
#define FRAGMARK_FRAGMARK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FRAGMARK_BUILDING_LIBRARY)
#define FRAGMARK_API __declspec(dllexport)
#else
#define FRAGMARK_API __declspec(dllimport)
#endif
#else
#define FRAGMARK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fragmark_status {
  FRAGMARK_OK = 0,
  FRAGMARK_ERR_MALFORMED_CONTAINER = 1,
  FRAGMARK_ERR_UNSUPPORTED_FORMAT = 2,
  FRAGMARK_ERR_TRUNCATED_DATA = 3,
  FRAGMARK_ERR_EMPTY_INPUT = 4,
  FRAGMARK_ERR_NON_HERMITIAN_INPUT = 5,
  FRAGMARK_ERR_OUT_OF_NYQUIST_RANGE = 6,
  FRAGMARK_ERR_WRONG_LENGTH = 7,
  FRAGMARK_ERR_SIGNAL_TOO_SHORT = 8,
  FRAGMARK_ERR_NYQUIST_TOO_LOW = 9,
  FRAGMARK_ERR_SCHEDULE_OVERLAP = 10,
  FRAGMARK_ERR_LENGTH_MISMATCH = 11,
  FRAGMARK_ERR_DOMAIN = 12,
  FRAGMARK_ERR_INVALID_CONFIG = 13,
  FRAGMARK_ERR_IO = 14,
  FRAGMARK_ERR_INVALID_ARGUMENT = 15,
  FRAGMARK_ERR_INTERNAL = 99
} fragmark_status;

typedef enum fragmark_mode {
  FRAGMARK_MODE_FLOAT = 0,
  FRAGMARK_MODE_PCM16 = 1
} fragmark_mode;

typedef enum fragmark_sample_format {
  FRAGMARK_FORMAT_PCM16 = 0,
  FRAGMARK_FORMAT_FLOAT32 = 1
} fragmark_sample_format;

typedef struct fragmark_signal fragmark_signal;
typedef struct fragmark_config fragmark_config;

FRAGMARK_API const char* fragmark_version(void);
FRAGMARK_API const char* fragmark_status_name(fragmark_status status);
FRAGMARK_API const char* fragmark_last_error(void);

/* Buffers and strings returned through out-parameters. */
FRAGMARK_API void fragmark_free(void* buffer);

/* ---- signals ---------------------------------------------------------- */

FRAGMARK_API fragmark_status fragmark_signal_create(uint32_t sample_rate,
                                                    size_t frames,
                                                    const double* left,
                                                    const double* right,
                                                    fragmark_signal** out);
FRAGMARK_API fragmark_status fragmark_signal_read_file(const char* path,
                                                       fragmark_signal** out);
FRAGMARK_API fragmark_status fragmark_signal_read_memory(
    const uint8_t* bytes, size_t size, fragmark_signal** out);
/* Atomic: writes a temporary sibling file, then renames it into place. */
FRAGMARK_API fragmark_status fragmark_signal_write_file(
    const fragmark_signal* signal, fragmark_sample_format format,
    const char* path);
FRAGMARK_API fragmark_status fragmark_signal_write_memory(
    const fragmark_signal* signal, fragmark_sample_format format,
    uint8_t** bytes, size_t* size);
FRAGMARK_API size_t fragmark_signal_frames(const fragmark_signal* signal);
FRAGMARK_API uint32_t
fragmark_signal_sample_rate(const fragmark_signal* signal);
/* Copies min(capacity, frames) samples of channel 0 or 1 into out. */
FRAGMARK_API fragmark_status fragmark_signal_channel(
    const fragmark_signal* signal, int channel, double* out, size_t capacity);
FRAGMARK_API void fragmark_signal_free(fragmark_signal* signal);

/* ---- configuration ---------------------------------------------------- */

FRAGMARK_API fragmark_status fragmark_config_default(fragmark_mode mode,
                                                     fragmark_config** out);
/* mode_override: -1 keeps the document's mode, otherwise a fragmark_mode. */
FRAGMARK_API fragmark_status fragmark_config_parse(const char* json,
                                                   int mode_override,
                                                   fragmark_config** out);
FRAGMARK_API fragmark_mode fragmark_config_mode(const fragmark_config* config);
/* With a non-null signal the layout and swap schedule are resolved for its
 * geometry and included under "resolved". */
FRAGMARK_API fragmark_status fragmark_config_to_json(
    const fragmark_config* config, const fragmark_signal* signal, char** json);
FRAGMARK_API void fragmark_config_free(fragmark_config* config);

/* ---- digest ----------------------------------------------------------- */

FRAGMARK_API void fragmark_md5(const uint8_t* data, size_t size,
                               uint8_t digest[16]);
FRAGMARK_API void fragmark_md5_hex(const uint8_t* data, size_t size,
                                   char hex[33]);

/* ---- watermarking ----------------------------------------------------- */

FRAGMARK_API fragmark_status fragmark_embed(const fragmark_signal* signal,
                                            const uint8_t* message,
                                            size_t message_size,
                                            const fragmark_config* config,
                                            fragmark_signal** out);
FRAGMARK_API fragmark_status fragmark_seal(const fragmark_signal* signal,
                                           const fragmark_config* config,
                                           fragmark_signal** out);
FRAGMARK_API fragmark_status fragmark_unseal(const fragmark_signal* signal,
                                             const fragmark_config* config,
                                             fragmark_signal** out);

typedef struct fragmark_extracted_key {
  char primary_hex[33];
  char secondary_hex[33];
  int copies_agree;
} fragmark_extracted_key;

FRAGMARK_API fragmark_status fragmark_extract(const fragmark_signal* signal,
                                              const fragmark_config* config,
                                              fragmark_extracted_key* out);

typedef struct fragmark_verification {
  char expected_hex[33];
  char primary_hex[33];
  char secondary_hex[33];
  int copies_agree;
  int intact;
  int match;
  double ber;
  double max_bin_deviation;
  double residual_ratio; /* NaN when not evaluated (float mode) */
} fragmark_verification;

FRAGMARK_API fragmark_status fragmark_verify(const fragmark_signal* signal,
                                             const uint8_t* message,
                                             size_t message_size,
                                             const fragmark_config* config,
                                             fragmark_verification* out);

/* ---- metrics ---------------------------------------------------------- */

enum {
  FRAGMARK_METRIC_NAD = 1u << 0,
  FRAGMARK_METRIC_NMSE = 1u << 1,
  FRAGMARK_METRIC_SNR = 1u << 2,
  FRAGMARK_METRIC_PSNR = 1u << 3,
  FRAGMARK_METRIC_NC = 1u << 4,
  FRAGMARK_METRIC_QC = 1u << 5,
  FRAGMARK_METRIC_BER = 1u << 6,
  FRAGMARK_METRIC_MOS = 1u << 7
};

/* Fields whose bit is clear in `defined` are undefined for this pair. */
typedef struct fragmark_distortion {
  double md, ad, nad, mse, nmse, snr_db, psnr_db, nc, qc, ber, mos;
  unsigned defined;
} fragmark_distortion;

/* channel: -1 for the interleaved signal, 0 or 1 for a single channel. */
FRAGMARK_API fragmark_status fragmark_distortion_compute(
    const fragmark_signal* original, const fragmark_signal* modified,
    const fragmark_config* config, int channel, fragmark_distortion* out);
/* Flat JSON object; ber is included when not NaN. */
FRAGMARK_API fragmark_status fragmark_distortion_json(
    const fragmark_signal* original, const fragmark_signal* modified,
    const fragmark_config* config, int channel, double ber, char** json);
FRAGMARK_API fragmark_status fragmark_mos(double snr_db, double n_const,
                                          double* out);
FRAGMARK_API const char* fragmark_rating_label(double mos);

/* ---- demo corpus ------------------------------------------------------ */

FRAGMARK_API size_t fragmark_demo_song_count(void);
FRAGMARK_API const char* fragmark_demo_song_name(size_t index);
FRAGMARK_API fragmark_status fragmark_demo_song(size_t index, uint64_t seed,
                                                double seconds,
                                                uint32_t sample_rate,
                                                fragmark_signal** out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif /* FRAGMARK_FRAGMARK_H_ */
