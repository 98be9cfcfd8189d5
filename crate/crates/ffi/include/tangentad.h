#ifndef TANGENTAD_H
#define TANGENTAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. The first four match the command-line exit codes.
 */
typedef enum TadStatus {
  TAD_STATUS_OK = 0,
  TAD_STATUS_CHECK_FAILED = 1,
  TAD_STATUS_INPUT_ERROR = 2,
  TAD_STATUS_BOUND_EXCEEDED = 3,
  TAD_STATUS_NULL_POINTER = 4,
  TAD_STATUS_PANIC = 5,
} TadStatus;

/*
 A diagram report.
 */
typedef struct TadReport TadReport;

/*
 A polynomial vector field.
 */
typedef struct TadVectorField TadVectorField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *tad_version(void);

/*
 The message of the last failed call on this thread; empty after a
 success. Valid until the next call into the library on this thread.
 */
const char *tad_last_error(void);

/*
 Runs a named suite (`weil`, `poly`, `bracket`, ...). `samples == 0`
 selects the suite's default, `mutation` may be null. On `Ok` or
 `CheckFailed` a report is stored in `*out`.

 # Safety
 `suite` must be a valid C string, `mutation` null or a valid C string,
 `out` a valid pointer.
 */
enum TadStatus tad_run_suite(const char *suite,
                             uint64_t seed,
                             size_t samples,
                             const char *mutation,
                             struct TadReport **out);

/*
 Builds the vector fields of the finite category given as JSON via the
 inserter and equifier and checks the comparison. `bounds` may be null
 for the defaults (or `TANGENTAD_BOUNDS`).

 # Safety
 `category_json` must be a valid C string, `bounds` null or a valid C
 string, `out` a valid pointer.
 */
enum TadStatus tad_check_category(const char *category_json,
                                  const char *bounds,
                                  struct TadReport **out);

/*
 Number of diagrams in the report; 0 for null.

 # Safety
 `report` must be null or a live handle.
 */
size_t tad_report_len(const struct TadReport *report);

/*
 Number of failing diagrams; 0 for null.

 # Safety
 `report` must be null or a live handle.
 */
size_t tad_report_failures(const struct TadReport *report);

/*
 The report as a JSON array; null for a null handle.

 # Safety
 `report` must be null or a live handle.
 */
char *tad_report_json(const struct TadReport *report);

/*
 # Safety
 `report` must be null or a handle not yet freed.
 */
void tad_report_free(struct TadReport *report);

/*
 Parses a polynomial vector field `{"base": m, "section": <PolyMap>}` and
 checks that it is a section of the projection.

 # Safety
 `json` must be a valid C string, `out` a valid pointer.
 */
enum TadStatus tad_field_parse(const char *json, struct TadVectorField **out);

/*
 The bracket `[u, v]`.

 # Safety
 `u` and `v` must be live handles, `out` a valid pointer.
 */
enum TadStatus tad_field_bracket(const struct TadVectorField *u,
                                 const struct TadVectorField *v,
                                 struct TadVectorField **out);

/*
 The field in the parse format; null for a null handle.

 # Safety
 `field` must be null or a live handle.
 */
char *tad_field_json(const struct TadVectorField *field);

/*
 Components of `v̂` in `v(x) = (x, v̂(x))`, as a JSON array of strings.

 # Safety
 `field` must be null or a live handle.
 */
char *tad_field_principal(const struct TadVectorField *field);

/*
 # Safety
 `field` must be null or a handle not yet freed.
 */
void tad_field_free(struct TadVectorField *field);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void tad_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANGENTAD_H */
