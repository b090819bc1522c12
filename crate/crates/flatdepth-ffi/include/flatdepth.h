#ifndef FLATDEPTH_H
#define FLATDEPTH_H

/* Generated by cbindgen from the flatdepth-ffi crate. Edit the Rust source, not this file. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call across the C boundary.
 */
typedef enum {
  /*
   The call succeeded.
   */
  FD_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  FD_STATUS_NULL_ARGUMENT = 1,
  /*
   An input string was not valid UTF-8.
   */
  FD_STATUS_INVALID_UTF8 = 2,
  /*
   The input violated the instance or result schema, or the instance
   carries no query to answer.
   */
  FD_STATUS_PARSE_ERROR = 3,
  /*
   The query asks for a dimension or flat shape outside the supported
   range.
   */
  FD_STATUS_UNSUPPORTED = 4,
  /*
   The result does not hold up against its instance under recount.
   */
  FD_STATUS_VERIFY_FAILED = 5,
  /*
   A panic was caught at the boundary.
   */
  FD_STATUS_INTERNAL = 6,
} FdStatus;

/*
 Opaque handle to a solved instance. Release with [`fd_result_free`].
 */
typedef struct FdResult FdResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Solves the query embedded in `instance_json` with the sweep solver.

 With `strict_headline` set, the handle's distance reports the strict
 crossing minimum instead of the closed count. On success writes a fresh
 handle to `out`; on failure writes null.

 # Safety
 `instance_json` must be null or a nul-terminated string valid for the
 duration of the call; `out` must be null or writable.
 */
FdStatus fd_query_json(const char *instance_json, bool strict_headline, FdResult **out);

/*
 Solves the embedded query with the exhaustive reference solver, splitting
 the work over `jobs` threads (0 is treated as 1). Slower than
 [`fd_query_json`] but structurally independent of it.

 # Safety
 `instance_json` must be null or a nul-terminated string valid for the
 duration of the call; `out` must be null or writable.
 */
FdStatus fd_oracle_json(const char *instance_json,
                        uint32_t jobs,
                        bool strict_headline,
                        FdResult **out);

/*
 Recounts `result_json` against `instance_json` without rerunning any
 solver. Returns [`FdStatus::Ok`] when every reported field holds up and
 [`FdStatus::VerifyFailed`] on the first mismatch, with the mismatch
 described by [`fd_last_error_message`].

 # Safety
 Both arguments must be null or nul-terminated strings valid for the
 duration of the call.
 */
FdStatus fd_verify_json(const char *instance_json, const char *result_json);

/*
 Distance under the handle's headline convention. Returns 0 for null.

 # Safety
 `result` must be null or a live handle from this library.
 */
uint64_t fd_result_distance(const FdResult *result);

/*
 Minimum number of hyperplanes crossed strictly. Returns 0 for null.

 # Safety
 `result` must be null or a live handle from this library.
 */
uint64_t fd_result_strict_min(const FdResult *result);

/*
 Number of hyperplanes containing the whole query flat. Returns 0 for
 null.

 # Safety
 `result` must be null or a live handle from this library.
 */
uint64_t fd_result_incident_count(const FdResult *result);

/*
 True when the query flats intersect, making the distance trivially zero
 and leaving no witness segment. Returns false for null.

 # Safety
 `result` must be null or a live handle from this library.
 */
bool fd_result_is_degenerate(const FdResult *result);

/*
 Serializes the handle to the canonical result JSON. On success writes a
 caller-owned string to `out`; release it with [`fd_string_free`].

 # Safety
 `result` must be null or a live handle from this library; `out` must be
 null or writable.
 */
FdStatus fd_result_to_json(const FdResult *result, char **out);

/*
 Releases a result handle. Null is ignored.

 # Safety
 `result` must be null or a handle from this library that is not used
 again afterwards.
 */
void fd_result_free(FdResult *result);

/*
 Releases a string allocated by this library. Null is ignored.

 # Safety
 `s` must be null or a string allocated by this library that is not used
 again afterwards.
 */
void fd_string_free(char *s);

/*
 Copy of the message recorded by the most recent failing call on this
 thread, or null when none has failed yet. Release with
 [`fd_string_free`].
 */
char *fd_last_error_message(void);

/*
 Stable lowercase name for a status code. The pointer is static; do not
 free it.
 */
const char *fd_status_name(FdStatus status);

/*
 Library version as a static string; do not free it.
 */
const char *fd_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLATDEPTH_H */
