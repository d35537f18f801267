#ifndef FIBERCOH_FIBERCOH_H
#define FIBERCOH_FIBERCOH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FC_API __declspec(dllexport)
#else
#  define FC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. FC_OK is zero; everything else is an error. */
typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_POSITIVITY_VIOLATION,
  FC_ERR_BAD_BIGRADING,
  FC_ERR_RING_MISMATCH,
  FC_ERR_INHOMOGENEOUS,
  FC_ERR_AMBIENT_MISMATCH,
  FC_ERR_SHAPE_MISMATCH,
  FC_ERR_ORDER_NOT_ELIMINATING,
  FC_ERR_BASE_NOT_DOMAIN,
  FC_ERR_BASE_NOT_FIELD,
  FC_ERR_TOO_SHORT,
  FC_ERR_DUALITY_MISMATCH,
  FC_ERR_ZERO_MODULE,
  FC_ERR_NOT_STANDARD_GRADED,
  FC_ERR_NOT_ON_VARIETY,
  FC_ERR_SHIFT_TOO_SMALL,
  FC_ERR_NO_RANK,
  FC_ERR_LOCUS_IS_EVERYTHING,
  FC_ERR_NOT_GENERICALLY_FINITE,
  FC_ERR_UNSTABLE,
  FC_ERR_GENERIC_NOT_FINITE,
  FC_ERR_EXPONENT_OVERFLOW,
  FC_ERR_UNBOUNDED_STRAND,
  FC_ERR_UNSUPPORTED_BASE,
  FC_ERR_PARSE,
  FC_ERR_UNDECLARED_NAME,
  FC_ERR_INVALID_ARGUMENT,
  FC_ERR_INTERNAL,
  FC_ERR_IO
} fc_status;

typedef struct fc_session fc_session;
typedef struct fc_run fc_run;

typedef struct fc_run_options {
  uint64_t seed;
  unsigned threads;
  int window_slack;
  unsigned power_cutoff; /* 0: default per source dimension */
  int csv;               /* nonzero: also produce CSV where available */
  const char* out_dir;   /* NULL or "": results stay in memory */
} fc_run_options;

FC_API const char* fc_version(void);

/* Name of a status code, e.g. "ParseError". */
FC_API const char* fc_status_name(int status);

/* Message of the last failure on the calling thread; "" if none. */
FC_API const char* fc_last_error(void);
/* Script location of the last parse failure; 0 if it had none. */
FC_API int fc_last_error_line(void);
FC_API int fc_last_error_column(void);

FC_API int fc_session_parse(const char* text, fc_session** out);
FC_API void fc_session_free(fc_session* s);
FC_API size_t fc_session_command_count(const fc_session* s);
/* Canonical text of the script. Release with fc_string_free. */
FC_API int fc_session_format(const fc_session* s, char** out);
FC_API void fc_string_free(char* p);

FC_API void fc_run_options_init(fc_run_options* o);
/* FC_OK means every command was attempted; per-command failures are in the results. */
FC_API int fc_session_run(const fc_session* s, const fc_run_options* o, fc_run** out);
FC_API void fc_run_free(fc_run* r);
FC_API int fc_run_exit_code(const fc_run* r);
FC_API size_t fc_run_count(const fc_run* r);
FC_API const char* fc_run_file(const fc_run* r, size_t i);
FC_API const char* fc_run_json(const fc_run* r, size_t i);
FC_API const char* fc_run_csv(const fc_run* r, size_t i);
FC_API int fc_run_ok(const fc_run* r, size_t i);

#ifdef __cplusplus
}
#endif

#endif
