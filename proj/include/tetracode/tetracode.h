/* C interface to the tetrahedral color code toolkit.
 *
 * Objects are opaque handles created and released by the library. Every
 * call returns a tc_status; on failure tc_last_error() describes the cause
 * (thread-local, valid until the next failing call on the same thread).
 * Buffers follow the two-call pattern: pass cap = 0 to learn the size. */
#ifndef TETRACODE_TETRACODE_H
#define TETRACODE_TETRACODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(TETRACODE_BUILDING_LIBRARY)
#define TC_API __attribute__((visibility("default")))
#else
#define TC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
  TC_OK = 0,
  TC_ERR_INVALID_ARGUMENT = 1,
  TC_ERR_CONSTRUCTION = 2,
  TC_ERR_BUFFER_TOO_SMALL = 3,
  TC_ERR_INTERNAL = 4
} tc_status;

typedef enum tc_error_type { TC_ERROR_X = 0, TC_ERROR_Z = 1 } tc_error_type;

typedef enum tc_failure_stage {
  TC_STAGE_NONE = 0,
  TC_STAGE_SWEEP = 1,
  TC_STAGE_LIFT = 2,
  TC_STAGE_MATCHING = 3
} tc_failure_stage;

typedef enum tc_membership {
  TC_MEMBER_STABILIZER = 0,
  TC_MEMBER_LOGICAL = 1,
  TC_MEMBER_OUTSIDE_NORMALIZER = 2
} tc_membership;

typedef struct tc_code tc_code;
typedef struct tc_decoder tc_decoder;

TC_API const char* tc_version(void);
TC_API const char* tc_last_error(void);

/* ---- codes ---- */

TC_API tc_status tc_code_build(int distance, tc_code** out);
TC_API void tc_code_free(tc_code* code);

typedef struct tc_code_info {
  int distance;
  size_t n_qubits;
  size_t n_x_stabilizers;
  size_t n_z_stabilizers;
  size_t n_vertices;
  size_t n_edges;
  size_t n_faces;
  size_t boundary_qubits;
  size_t bulk_qubits;
  double beta; /* +inf when there are no bulk qubits */
} tc_code_info;

TC_API tc_status tc_code_get_info(const tc_code* code, tc_code_info* out);

typedef struct tc_validation {
  size_t problem_count; /* structural problems, 0 when valid */
  size_t rank_hx;
  size_t rank_hz;
  long logical_qubits;  /* n - rank Hx - rank Hz */
  /* Exhaustive minimum logical weight search up to *_searched; *_found is 1
   * when a logical was found (weight exact), 0 when the weight exceeds the
   * searched bound. */
  int x_weight;
  int x_found;
  int x_searched;
  int z_weight;
  int z_found;
  int z_searched;
} tc_validation;

/* Subset sizes of the distance search are capped by `search_budget`
 * candidate supports per weight (0 selects a default). */
TC_API tc_status tc_code_validate(const tc_code* code, uint64_t search_budget, tc_validation* out);

/* Text of structural problem `index` (0 <= index < problem_count). */
TC_API tc_status tc_code_problem(const tc_code* code, size_t index, char* buf, size_t cap, size_t* needed);

TC_API tc_status tc_code_lattice_json(const tc_code* code, char* buf, size_t cap, size_t* needed);
TC_API tc_status tc_code_sidecar_json(const tc_code* code, char* buf, size_t cap, size_t* needed);

/* Residual classification for a qubit id set. */
TC_API tc_status tc_code_classify(const tc_code* code, tc_error_type type, const int* qubits, size_t count,
                                  tc_membership* out);

/* Syndromes: X errors give edge ids, Z errors give vertex ids. */
TC_API tc_status tc_extract_syndrome(const tc_code* code, tc_error_type type, const int* qubits, size_t count,
                                     int* out, size_t cap, size_t* needed);

/* ---- decoding ---- */

typedef struct tc_decoder_config {
  char lift_color;          /* 'r', 'g', 'b' or 'y' */
  int gf2_fallback;         /* exact solve instead of the sweep rule */
  int all_restrictions;     /* Z decoder: 6 color pairs (1) or 3 (0) */
  int rounds_per_direction; /* 0 selects ceil(d/2) */
  int max_sweep_rounds;     /* 0 selects 32 d */
} tc_decoder_config;

TC_API void tc_decoder_config_default(tc_decoder_config* cfg);
/* The decoder borrows `code`, which must outlive it. */
TC_API tc_status tc_decoder_create(const tc_code* code, const tc_decoder_config* cfg, tc_decoder** out);
TC_API void tc_decoder_free(tc_decoder* decoder);

typedef struct tc_decode_result {
  int heralded_failure;
  tc_failure_stage failure_stage;
  size_t correction_size;
  int* correction; /* owned by the result */
} tc_decode_result;

/* `syndrome` holds edge ids for X and vertex ids for Z. */
TC_API tc_status tc_decode(const tc_decoder* decoder, tc_error_type type, const int* syndrome, size_t count,
                           tc_decode_result** out);
TC_API void tc_decode_result_free(tc_decode_result* result);

/* ---- simulation ---- */

typedef struct tc_sim_config {
  tc_decoder_config decoder;
  unsigned workers;
  int heralded_as_failure;
  int verify; /* cross-check every trial against the GF(2) oracle */
} tc_sim_config;

TC_API void tc_sim_config_default(tc_sim_config* cfg);

typedef struct tc_run_stats {
  int distance;
  size_t n_qubits;
  double beta;
  tc_error_type error_type;
  double p;
  uint64_t trials;
  uint64_t failures;
  uint64_t heralded_failures;
  double p_fail;
  double std_err;
  uint64_t seed;
  double wall_time;
} tc_run_stats;

TC_API tc_status tc_simulate(const tc_code* code, tc_error_type type, double p, uint64_t trials, uint64_t seed,
                             const tc_sim_config* cfg, tc_run_stats* out);

TC_API const char* tc_csv_header(void);
TC_API tc_status tc_csv_row(const tc_run_stats* stats, char* buf, size_t cap, size_t* needed);

typedef struct tc_crossing {
  int found;
  double p;
  double low;
  double high;
  int clamped;
} tc_crossing;

/* Curves a and b share the same increasing p grid of length n. */
TC_API tc_status tc_estimate_crossing(const tc_run_stats* a, const tc_run_stats* b, size_t n, tc_crossing* out);

/* n grid points between lo and hi written to out (length >= n). */
TC_API tc_status tc_probability_grid(double lo, double hi, int n, int log_spaced, double* out);

#ifdef __cplusplus
}
#endif

#endif
