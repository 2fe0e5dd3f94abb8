#ifndef GROUPBELL_H
#define GROUPBELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  GB_STATUS_OK = 0,
  GB_STATUS_NULL_POINTER = 1,
  GB_STATUS_INVALID_UTF8 = 2,
  // Malformed input; the message names the offending JSON pointer.
  GB_STATUS_SCHEMA = 3,
  GB_STATUS_UNKNOWN_SCENARIO = 4,
  GB_STATUS_UNUSABLE_INITIAL_STATE = 5,
  GB_STATUS_BUFFER_TOO_SMALL = 6,
  GB_STATUS_SEARCH_SPACE_TOO_LARGE = 7,
  GB_STATUS_METHOD_UNAVAILABLE = 8,
  // Any other library error.
  GB_STATUS_FAILED = 9,
  GB_STATUS_PANIC = 10,
} GbStatus;

typedef enum {
  GB_METHOD_DENSE = 0,
  GB_METHOD_GRAM = 1,
  GB_METHOD_SYMMETRY = 2,
  GB_METHOD_ALL = 3,
} GbMethod;

typedef enum {
  GB_GAME_NONE = 0,
  GB_GAME_RESTRICTED = 1,
  GB_GAME_FULL = 2,
} GbGame;

// Opaque scenario handle.
typedef struct GbScenario GbScenario;

typedef struct {
  size_t parties;
  size_t observables;
  size_t outcomes;
  size_t local_dim;
  size_t joint_dim;
  size_t group_order;
  size_t event_count;
} GbShape;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *gb_version(void);

// Message for the last failed call on this thread, empty after a success.
// Valid until the next library call on the same thread.
const char *gb_last_error_message(void);

// Builds one of the registry scenarios (`intro-z4`, `three-party-z6`,
// `d3`, `z6-qubit`, `d6`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
GbStatus gb_scenario_from_registry(const char *name, GbScenario **out);

// Parses a scenario file's contents.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
GbStatus gb_scenario_from_json(const char *json, GbScenario **out);

// Releases a scenario; null is ignored.
//
// # Safety
// `scenario` must come from this library and not be used afterwards.
void gb_scenario_free(GbScenario *scenario);

// # Safety
// `scenario` must be a live handle and `out` a valid pointer.
GbStatus gb_scenario_shape(const GbScenario *scenario, GbShape *out);

// Classical bound `S_c`.
//
// # Safety
// `scenario` must be a live handle and `out` a valid pointer.
GbStatus gb_classical_bound(const GbScenario *scenario, uint64_t *out);

// Quantum maximum `S_q` by the given route.
//
// # Safety
// `scenario` must be a live handle and `out` a valid pointer.
GbStatus gb_quantum_value(const GbScenario *scenario, GbMethod method, double *out);

// Writes the optimal state's amplitudes into `re` and `im`, each of length
// `capacity`, and its dimension into `written`. With too small a buffer
// nothing is copied, `written` receives the needed length and
// `BufferTooSmall` is returned.
//
// # Safety
// `re` and `im` must hold `capacity` doubles; `written` must be valid.
GbStatus gb_optimal_state(const GbScenario *scenario,
                          GbMethod method,
                          double *re,
                          double *im,
                          size_t capacity,
                          size_t *written);

// Full result document as JSON. Free the string with `gb_string_free`.
//
// # Safety
// `scenario` must be a live handle and `out` a valid pointer.
GbStatus gb_result_json(const GbScenario *scenario, GbMethod method, GbGame game, char **out);

// Releases a string returned by the library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void gb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPBELL_H */
