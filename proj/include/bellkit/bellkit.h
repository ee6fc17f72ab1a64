// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef BELLKIT_BELLKIT_H
#define BELLKIT_BELLKIT_H

#include <stddef.h>

#if defined(BELLKIT_BUILDING_LIBRARY)
#define BK_API __attribute__((visibility("default")))
#else
#define BK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bk_status {
    BK_OK = 0,
    BK_NOT_UNITARY = 1,
    BK_NOT_DTH_ROOT = 2,
    BK_DIMENSION_MISMATCH = 3,
    BK_INVALID_MEASUREMENT = 4,
    BK_SCENARIO_MISMATCH = 5,
    BK_TOO_LARGE = 6,
    BK_SIGNALING_DETECTED = 7,
    BK_OUT_OF_RANGE = 8,
    BK_NOT_BINARY_OBSERVABLE = 9,
    BK_NOT_D_VALUED_OBSERVABLE = 10,
    BK_NOT_SELF_ADJOINT = 11,
    BK_NOT_MAXIMAL = 12,
    BK_SUPPORT_MISMATCH = 13,
    BK_NO_CONVERGENCE = 14,
    BK_UNKNOWN_COMMAND = 15,
    BK_INVALID_PARAMETER = 16,
    BK_IO_ERROR = 17,
    BK_NULL_ARGUMENT = 18,
    BK_INTERNAL = 19
} bk_status;

typedef enum bk_format { BK_FORMAT_JSON = 0, BK_FORMAT_CSV = 1 } bk_format;

/* Opaque report handle. */
typedef struct bk_report bk_report;

/* Library version, e.g. "0.1.0". */
BK_API const char* bk_version(void);

/* Name of a status code, e.g. "InvalidParameter". */
BK_API const char* bk_status_string(bk_status status);

/* NUL-separated list of subcommand names, terminated by an empty string. */
BK_API const char* bk_commands(void);

/* Worker threads for module-level parallelism; 0 selects the hardware count. */
BK_API void bk_set_threads(size_t threads);
BK_API size_t bk_threads(void);

/*
 * Runs one subcommand. params_json is a JSON object keyed by parameter name
 * (NULL or "" means no parameters). On success *out owns a new report that
 * must be released with bk_report_free; on failure *out is NULL and
 * bk_last_error() describes the problem.
 */
BK_API bk_status bk_run(const char* command, const char* params_json, bk_report** out);

/* Parses a report previously produced by bk_report_json. */
BK_API bk_status bk_report_parse(const char* json, bk_report** out);

/* Canonical JSON text. Valid until the report is freed. */
BK_API const char* bk_report_json(const bk_report* report);

/* CSV text. Valid until the report is freed or bk_report_csv is called again. */
BK_API const char* bk_report_csv(bk_report* report);

/* JSON text of payload[key].value, or NULL if absent. Valid until the next
 * call on the same report. */
BK_API const char* bk_report_value(bk_report* report, const char* key);

BK_API bk_status bk_report_write(const bk_report* report, const char* path, bk_format format);

BK_API void bk_report_free(bk_report* report);

/*
 * JSON object {"code": ..., "message": ..., "field": ..., "constraint": ...}
 * describing the last failure on this thread; "{}" after a success.
 */
BK_API const char* bk_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* BELLKIT_BELLKIT_H */
