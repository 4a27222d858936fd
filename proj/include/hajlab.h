/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef HAJLAB_H
#define HAJLAB_H

#include <stddef.h>

#if defined(HAJLAB_BUILDING_LIBRARY)
#define HAJLAB_API __attribute__((visibility("default")))
#else
#define HAJLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values below 100 mirror the library's error kinds. */
typedef enum hajlab_status {
  HAJLAB_OK = 0,
  HAJLAB_INVALID_INPUT = 1,
  HAJLAB_ASYMMETRIC_DISTANCE = 2,
  HAJLAB_TRIANGLE_VIOLATION = 3,
  HAJLAB_NONPOSITIVE_WEIGHT = 4,
  HAJLAB_EMPTY_SET = 5,
  HAJLAB_BAD_KAPPA = 6,
  HAJLAB_DEGENERATE_SPACE = 7,
  HAJLAB_BAD_EXPONENT = 8,
  HAJLAB_BAD_PROBLEM = 9,
  HAJLAB_INFEASIBLE_GRADIENT = 10,
  HAJLAB_EMPTY_ANNULUS = 11,
  HAJLAB_BAD_RHO = 12,
  HAJLAB_BAD_ALPHA = 13,
  HAJLAB_NEGATIVE_ENTRY = 14,
  HAJLAB_COMPLEMENT_EMPTY_BEYOND_N = 15,
  HAJLAB_BAD_SPEC = 16,
  HAJLAB_SOLVER_FAILURE = 17,
  HAJLAB_INTERNAL = 100
} hajlab_status;

/* Opaque immutable metric measure space. */
typedef struct hajlab_space hajlab_space;

HAJLAB_API const char* hajlab_version(void);
HAJLAB_API const char* hajlab_status_name(hajlab_status status);
/* 1 when the status is a numerical failure rather than bad input. */
HAJLAB_API int hajlab_status_is_solver(hajlab_status status);
/* Message of the last failing call on this thread ("" if none). */
HAJLAB_API const char* hajlab_last_error(void);

/* Strings returned through char** are owned by the caller. */
HAJLAB_API void hajlab_string_free(char* str);

HAJLAB_API hajlab_status hajlab_space_from_json(const char* json, hajlab_space** out);
/* Generator spec, JSON or "kind:key=value,...". */
HAJLAB_API hajlab_status hajlab_space_generate(const char* spec, hajlab_space** out);
HAJLAB_API void hajlab_space_free(hajlab_space* space);
HAJLAB_API size_t hajlab_space_size(const hajlab_space* space);
/* Generator origin, or point 0 for spaces read from JSON. */
HAJLAB_API size_t hajlab_space_origin(const hajlab_space* space);
HAJLAB_API hajlab_status hajlab_space_to_json(const hajlab_space* space, char** out_json);

/*
 * Report entry points. `config` is a JSON object; unknown keys are an
 * error. Keys (all optional unless noted):
 *   geometry:  kappa, basepoint
 *   capacity:  target ("msp"|"relative"|"wspq", required), E (required), F,
 *              s, p, q, tol, seed
 *   content:   E (required), d, rho, mode ("exact"|"greedy"), s, p, alpha
 *   limits:    s, p, kappa, lambdas, basepoint, jmax, floor, threshold, u,
 *              profile, seed, tol
 * Results are JSON text; limits also returns its per-j series as CSV.
 */
HAJLAB_API hajlab_status hajlab_geometry(const hajlab_space* space, const char* config,
                                         char** out_json);
HAJLAB_API hajlab_status hajlab_capacity(const hajlab_space* space, const char* config,
                                         char** out_json);
HAJLAB_API hajlab_status hajlab_content(const hajlab_space* space, const char* config,
                                        char** out_json);
HAJLAB_API hajlab_status hajlab_limits(const hajlab_space* space, const char* config,
                                       char** out_json, char** out_csv);

/*
 * Runs the property suites. config keys: seed, filter, sabotage, scale.
 * *all_passed is set to 1 when every check passed.
 */
HAJLAB_API hajlab_status hajlab_verify(const char* config, char** out_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* HAJLAB_H */
