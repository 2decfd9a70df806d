#ifndef FERMI_FERMI_H
#define FERMI_FERMI_H

#include <stdint.h>

#if defined(_WIN32)
#define FERMI_API __declspec(dllexport)
#else
#define FERMI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fermi_status {
  FERMI_OK = 0,
  FERMI_INVALID_ARGUMENT = 1,
  FERMI_SHAPE_MISMATCH = 2,
  FERMI_DEGENERATE_INPUT = 3,
  FERMI_PARSE_ERROR = 4,
  FERMI_IO_ERROR = 5,
  FERMI_CAPACITY = 6,
  FERMI_INTERNAL = 7
} fermi_status;

typedef enum fermi_verdict {
  FERMI_VERDICT_UNIVERSAL = 0,
  FERMI_VERDICT_NOT_UNIVERSAL_DIM_BOUND = 1,
  FERMI_VERDICT_UNKNOWN = 2
} fermi_verdict;

/* Opaque antisymmetric state (m modes, n particles). */
typedef struct fermi_state fermi_state;

/* Message for the last failing call on this thread; never NULL. */
FERMI_API const char* fermi_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
FERMI_API void fermi_string_free(char* s);

FERMI_API int fermi_default_threads(void);

/* ---- states ---- */
FERMI_API void fermi_state_free(fermi_state* s);
FERMI_API fermi_status fermi_state_read(const char* path, fermi_state** out);
FERMI_API fermi_status fermi_state_write(const fermi_state* s, const char* path);
FERMI_API fermi_status fermi_state_parse(const char* json, fermi_state** out);
FERMI_API fermi_status fermi_state_to_json(const fermi_state* s, char** out);
FERMI_API fermi_status fermi_state_shape(const fermi_state* s, int* m, int* n);
FERMI_API fermi_status fermi_state_hash(const fermi_state* s, char** out);

/* Normalized state with independent complex Gaussian amplitudes. */
FERMI_API fermi_status fermi_state_random(int m, int n, uint64_t seed, fermi_state** out);
/* Equal-weight paired state psi_{n,m}. */
FERMI_API fermi_status fermi_state_bcs(int n, int m, fermi_state** out);
/* Basis state |i1 ^ ... ^ in>, 1-based strictly increasing indices. */
FERMI_API fermi_status fermi_state_slater(int m, const int* indices, int n, fermi_state** out);
/* wedge^4 U |1 ^ 3 ^ 5 ^ 7> for a Haar-random U. */
FERMI_API fermi_status fermi_state_planted_sov(int m, uint64_t seed, fermi_state** out);

/* ---- canonical forms and reductions (JSON reports) ---- */
FERMI_API fermi_status fermi_takagi(const fermi_state* s, char** report);
FERMI_API fermi_status fermi_canon5(const fermi_state* s, char** report);

typedef struct fermi_reduce_options {
  double tol;       /* success when residual <= tol * |psi|^2; 0 selects the default */
  int restarts;     /* <= 0 selects the default */
  uint64_t seed;
  int threads;      /* <= 0 selects fermi_default_threads() */
} fermi_reduce_options;

/* reduced may be NULL. */
FERMI_API fermi_status fermi_reduce_sov(const fermi_state* s, const fermi_reduce_options* opts, char** report,
                                        fermi_state** reduced);
FERMI_API fermi_status fermi_reduce_minimal(const fermi_state* s, const fermi_reduce_options* opts, char** report,
                                            fermi_state** reduced);

/* ---- certificates ---- */

/* request: {"m": 7, "preset": "minimal-odd"} or {"m": 6, "excluded": [[1,2,3], ...]};
   optional "multiplier" ("x1*x3^2"), "eliminate_last_var" (bool), "budget", "threads". */
FERMI_API fermi_status fermi_certify(const char* request_json, char** report, fermi_verdict* verdict);
FERMI_API fermi_status fermi_coeff_table(int max_m, char** report);
FERMI_API fermi_status fermi_dims(int m, int n, char** report);

/* ---- experiments ---- */
FERMI_API fermi_status fermi_bcs_check(int n, int m, int restarts, uint64_t seed, int threads, char** report);
FERMI_API fermi_status fermi_escape(const fermi_state* s, int restarts, uint64_t seed, int threads, double threshold,
                                    char** report);

/* ---- acceptance suite ---- */
typedef void (*fermi_verify_callback)(int index, const char* name, int passed, const char* detail, double seconds,
                                      void* user);

/* only: optional list of criterion numbers (NULL or count 0 for all). */
FERMI_API fermi_status fermi_verify(int threads, const int* only, int only_count, fermi_verify_callback cb, void* user,
                                    int* failures);
FERMI_API int fermi_verify_criterion_count(void);

#ifdef __cplusplus
}
#endif

#endif
