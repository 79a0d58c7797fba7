/* C interface to the calibrated-forecasting library.
 *
 * All functions return calib_status; out-parameters are only written on
 * CALIB_OK. calib_last_error() returns a thread-local message describing the
 * most recent failure on the calling thread.
 *
 * Rationals cross the boundary as exact num/den pairs (den > 0, lowest
 * terms). Handles are opaque; every *_new has a matching *_free.
 */
#ifndef CALIB_H
#define CALIB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum calib_status {
    CALIB_OK = 0,
    CALIB_ERR_INVALID_ARGUMENT = 1,
    CALIB_ERR_PROTOCOL = 2,
    CALIB_ERR_GUARD = 3,
    CALIB_ERR_PARSE = 4,
    CALIB_ERR_OVERFLOW = 5,
    CALIB_ERR_INVARIANT = 6,
    CALIB_ERR_IO = 7,
} calib_status;

typedef enum calib_side {
    CALIB_SIDE_LEFT = 0,
    CALIB_SIDE_RIGHT = 1,
    CALIB_SIDE_ALTERNATE = 2,
} calib_side;

typedef struct calib_rat {
    int64_t num;
    int64_t den;
} calib_rat;

/* Message for the most recent error on this thread; valid until the next
 * failing call. Never NULL. */
const char* calib_last_error(void);

/* --- rationals ------------------------------------------------------- */

/* Canonical form "num/den" (integers bare). Truncates if buf is too small. */
calib_status calib_rat_render(calib_rat value, char* buf, size_t buflen);

/* Decimal with 12 significant digits, trailing zeros trimmed. */
calib_status calib_rat_render_decimal(calib_rat value, char* buf, size_t buflen);

/* Accepts "num/den", integers, and decimal literals. */
calib_status calib_rat_parse(const char* text, calib_rat* out);

/* --- transcripts ------------------------------------------------------ */

typedef struct calib_transcript calib_transcript;

calib_transcript* calib_transcript_new(void);
void calib_transcript_free(calib_transcript* t);
calib_status calib_transcript_push(calib_transcript* t, calib_rat prediction, int outcome);
size_t calib_transcript_len(const calib_transcript* t);

/* CSV with required header "t,p,y". */
calib_status calib_transcript_load_csv(const char* path, calib_transcript** out);

/* --- calibration metrics ---------------------------------------------- */

calib_status calib_ece(const calib_transcript* t, calib_rat* out);
calib_status calib_l1_distance(const calib_transcript* a, const calib_transcript* b,
                               calib_rat* out);

/* Exact distance to calibration by set-partition enumeration; refuses
 * transcripts longer than max_rounds (pass 0 for the default guard of 10). */
calib_status calib_caldist_exact(const calib_transcript* t, size_t max_rounds,
                                 calib_rat* out);

/* l1(emitted, lookahead) + ece(lookahead). */
calib_status calib_caldist_upper(const calib_transcript* emitted,
                                 const calib_transcript* lookahead, calib_rat* out);

/* --- forecaster -------------------------------------------------------- */

typedef struct calib_forecaster calib_forecaster;

/* m_override 0 means ceil(sqrt(horizon)). */
calib_status calib_forecaster_new(uint64_t horizon, calib_side side,
                                  uint32_t m_override, calib_forecaster** out);
void calib_forecaster_free(calib_forecaster* f);
calib_status calib_forecaster_predict(calib_forecaster* f, calib_rat* prediction_out);
calib_status calib_forecaster_observe(calib_forecaster* f, int outcome,
                                      calib_rat* lookahead_out);
uint32_t calib_forecaster_m(const calib_forecaster* f);

/* --- adversary ---------------------------------------------------------- */

typedef struct calib_adversary calib_adversary;

/* spec grammar: fixed:<bits> | bernoulli:<q>[:<seed>] | opposite | bias-amp.
 * default_seed applies to bernoulli specs without an embedded seed. */
calib_status calib_adversary_new(const char* spec, uint64_t default_seed,
                                 calib_adversary** out);
void calib_adversary_free(calib_adversary* a);
calib_status calib_adversary_next(calib_adversary* a, calib_rat prediction,
                                  int* outcome_out);

/* --- harness ------------------------------------------------------------ */

typedef struct calib_run_config {
    uint64_t horizon;
    const char* adversary;      /* spec string */
    calib_side side;
    uint32_t m_override;        /* 0 = ceil(sqrt(horizon)) */
    uint64_t seed;
    const char* trace_path;     /* NULL = no trace file */
    const char* summary_path;   /* NULL = no summary file */
    int exact_columns;          /* add p_exact,p_tilde_exact to the trace */
    size_t caldist_guard;       /* 0 = default of 10 */
} calib_run_config;

/* Runs one match; on success *summary_json receives a malloc'd JSON string
 * (free with calib_string_free) and, if all_pass_out is non-NULL, whether
 * every verdict passed. */
calib_status calib_run_match(const calib_run_config* config, char** summary_json,
                             int* all_pass_out);

typedef struct calib_sweep_config {
    const uint64_t* horizons;
    size_t n_horizons;
    const char* const* adversaries;
    size_t n_adversaries;
    const calib_side* sides;
    size_t n_sides;
    uint32_t replicates;        /* replicate r runs with seed base_seed + r */
    uint64_t base_seed;
    const char* output_dir;     /* NULL = no per-cell files */
    size_t caldist_guard;       /* 0 = default of 10 */
} calib_sweep_config;

calib_status calib_sweep(const calib_sweep_config* config, char** report_json,
                         int* all_pass_out);

void calib_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CALIB_H */
