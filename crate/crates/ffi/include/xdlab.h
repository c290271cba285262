#ifndef XDLAB_H
#define XDLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum XdlStatus {
  XDL_STATUS_OK = 0,
  XDL_STATUS_NULL_POINTER = 1,
  XDL_STATUS_INVALID_UTF8 = 2,
  XDL_STATUS_PARSE = 3,
  XDL_STATUS_EVAL = 4,
  XDL_STATUS_INVALID_ARGUMENT = 5,
  XDL_STATUS_DIMENSION_TOO_LARGE = 6,
  XDL_STATUS_CONFIG = 7,
  XDL_STATUS_INTERNAL = 8,
} XdlStatus;

typedef enum XdlRepresentation {
  XDL_REPRESENTATION_LORENTZ = 0,
  XDL_REPRESENTATION_GALILEAN = 1,
} XdlRepresentation;

// Opaque expression handle.
typedef struct XdlExpr XdlExpr;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Valid until the next call.
const char *xdl_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void xdl_string_free(char *s);

// # Safety
// `src` must be a nul-terminated string and `out` a writable pointer.
enum XdlStatus xdl_expr_parse(const char *src, struct XdlExpr **out);

// Evaluates at `point`, five values ordered x, y, z, w, t.
//
// # Safety
// `expr` must come from this library, `point` must hold five doubles.
enum XdlStatus xdl_expr_eval(const struct XdlExpr *expr, const double *point, double *out);

// Symbolic derivative; `axis` is 0..=4 for x, y, z, w, t.
//
// # Safety
// `expr` must come from this library and `out` must be writable.
enum XdlStatus xdl_expr_diff(const struct XdlExpr *expr, uint32_t axis, struct XdlExpr **out);

// # Safety
// `expr` must come from this library; `out` receives a string for [`xdl_string_free`].
enum XdlStatus xdl_expr_to_string(const struct XdlExpr *expr, char **out);

// # Safety
// `expr` must be null or an unfreed handle from this library.
void xdl_expr_free(struct XdlExpr *expr);

// Max deviation of the gamma anticommutators from twice the metric.
//
// # Safety
// `out` must be writable.
enum XdlStatus xdl_clifford_residual(enum XdlRepresentation rep, double *out);

// Residuals of MR against Mtz and OR against Psch for profile `omega` on a
// `d`-dimensional cube with `n` points per side.
//
// # Safety
// `omega` must be a nul-terminated string; `out_mr` and `out_or` writable.
enum XdlStatus xdl_consistency_residual(const char *omega,
                                        uint32_t d,
                                        uint32_t n,
                                        double length,
                                        double m,
                                        double e,
                                        double *out_mr,
                                        double *out_or);

// Runs a scenario given as TOML text and returns every check as CSV with
// columns suite, check, anchor, value, tolerance, status. No files are
// written. `suite` may be null to keep the suite named in the text.
// `all_passed` (optional) receives 1 when no check failed.
//
// # Safety
// String arguments must be nul-terminated; `out_csv` must be writable.
enum XdlStatus xdl_run_scenario(const char *config_toml,
                                const char *suite,
                                uint64_t seed,
                                char **out_csv,
                                int32_t *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XDLAB_H */
