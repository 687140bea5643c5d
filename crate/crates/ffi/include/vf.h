#ifndef VF_H
#define VF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VfStatus {
  VF_STATUS_OK = 0,
  VF_STATUS_NULL_ARGUMENT = 1,
  VF_STATUS_INVALID_UTF8 = 2,
  VF_STATUS_UNKNOWN_LANGUAGE = 3,
  VF_STATUS_CONFIG = 4,
  VF_STATUS_IO = 5,
  VF_STATUS_INTERNAL = 6,
} VfStatus;

// Results of one analysis.
typedef struct VfResults VfResults;

// A language, its rule configuration and the creation timestamp.
typedef struct VfSession VfSession;

// Creates a session for `language` ("minicpp" or "seqdiag") with every
// built-in rule enabled.
//
// # Safety
// `language` is a NUL-terminated string; `out` is writable.
enum VfStatus vf_session_new(const char *language, struct VfSession **out);

// Replaces the rule configuration with the parsed `text`.
// On failure the previous configuration is kept.
//
// # Safety
// `session` comes from [`vf_session_new`]; `text` is NUL-terminated.
enum VfStatus vf_session_load_config(struct VfSession *session, const char *text);

// Fixes the creation timestamp of later results; null restores the clock.
//
// # Safety
// `session` comes from [`vf_session_new`]; `timestamp` is null or NUL-terminated.
enum VfStatus vf_session_set_timestamp(struct VfSession *session, const char *timestamp);

// Analyzes one in-memory unit named `file`.
//
// # Safety
// `session` comes from [`vf_session_new`]; `file` and `content` are
// NUL-terminated; `out` is writable.
enum VfStatus vf_session_analyze_source(const struct VfSession *session,
                                        const char *file,
                                        const char *content,
                                        struct VfResults **out);

// Reads and analyzes `count` files. Unreadable or unparseable files become
// diagnostics in the results rather than errors.
//
// # Safety
// `session` comes from [`vf_session_new`]; `paths` points to `count`
// NUL-terminated strings; `out` is writable.
enum VfStatus vf_session_analyze_files(const struct VfSession *session,
                                       const char *const *paths,
                                       uintptr_t count,
                                       struct VfResults **out);

// # Safety
// `session` is null or comes from [`vf_session_new`] and is not used again.
void vf_session_free(struct VfSession *session);

// Total findings; 0 for a null handle.
//
// # Safety
// `results` is null or a live results handle.
uintptr_t vf_results_finding_count(const struct VfResults *results);

// Input problems (I/O, lexing, parsing, declarations); 0 for a null handle.
//
// # Safety
// `results` is null or a live results handle.
uintptr_t vf_results_diagnostic_count(const struct VfResults *results);

// Process exit code for CI: 0 clean, 1 failing findings, 2 input errors.
// Returns 2 for a null handle.
//
// # Safety
// `results` is null or a live results handle.
int32_t vf_results_exit_code(const struct VfResults *results, bool strict);

// XML document; null for a null handle. Free with [`vf_string_free`].
//
// # Safety
// `results` is null or a live results handle.
char *vf_results_to_xml(const struct VfResults *results);

// HTML report; null for a null handle. Free with [`vf_string_free`].
//
// # Safety
// `results` is null or a live results handle.
char *vf_results_to_html(const struct VfResults *results);

// # Safety
// `results` is null or a live results handle that is not used again.
void vf_results_free(struct VfResults *results);

// # Safety
// `s` is null or a string returned by this library, not freed before.
void vf_string_free(char *s);

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call into the library on the same thread.
const char *vf_last_error(void);

#endif  /* VF_H */
