#ifndef BETAWORDS_BETAWORDS_H
#define BETAWORDS_BETAWORDS_H

/*
 * C interface to the betawords library: expansions of 1 in base beta,
 * admissible words, full/non-full classification and run-length sets.
 *
 * Conventions
 *   - Every function returns a bw_status; results go through out-parameters.
 *   - On failure bw_last_error() describes the problem for the calling thread,
 *     and bw_last_error_position() gives a 1-based position when one applies
 *     (offending shift, digit, or corpus line), else 0.
 *   - Words are arrays of uint8_t digits with an explicit length.
 *   - Strings are written into caller buffers: pass (buf, cap, &needed).
 *     `needed` always receives the size including the terminating NUL; if
 *     buf is NULL or cap < needed the call returns BW_ERR_BUFFER_TOO_SMALL
 *     and writes nothing.
 *   - Handles are opaque and immutable unless noted; an expansion handle may
 *     be shared between threads. Enumerators and run streams are
 *     single-consumer. Every *_new / *_parse handle is released by the
 *     matching *_free, which accepts NULL.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BETAWORDS_BUILDING_LIBRARY)
#    define BW_API __declspec(dllexport)
#  else
#    define BW_API __declspec(dllimport)
#  endif
#else
#  define BW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bw_status {
  BW_OK = 0,
  BW_ERR_INVALID_INPUT = 1,
  BW_ERR_NOT_SELF_DOMINANT = 2,
  BW_ERR_ALPHABET_MISMATCH = 3,
  BW_ERR_NOT_ADMISSIBLE = 4,
  BW_ERR_PRECISION_EXHAUSTED = 5,
  BW_ERR_INTEGER_BETA = 6,
  BW_ERR_TAIL_MISMATCH = 7,
  BW_ERR_NULL_ARGUMENT = 8,
  BW_ERR_BUFFER_TOO_SMALL = 9,
  BW_ERR_OUT_OF_RANGE = 10,
  BW_ERR_INTERNAL = 11
} bw_status;

BW_API const char* bw_status_name(bw_status status);
BW_API const char* bw_last_error(void);
BW_API size_t bw_last_error_position(void);
BW_API const char* bw_version(void);

/* ---- expansions of 1 -------------------------------------------------- */

typedef struct bw_expansion bw_expansion;

typedef struct bw_expansion_info {
  int is_finite;
  size_t length;          /* M when finite, else 0 */
  unsigned alphabet_max;  /* floor(beta) = first digit */
  int is_integer_beta;
  size_t preperiod_length;
  size_t period_length;
} bw_expansion_info;

/* "3,0,2,0,0,0,0,1" (finite) or "1,0,0;1,0,0,0" (preperiod;period). */
BW_API bw_status bw_expansion_parse(const char* text, bw_expansion** out);
/* {"finite":[...]} or {"preperiod":[...],"period":[...]} */
BW_API bw_status bw_expansion_from_json(const char* json, bw_expansion** out);
BW_API bw_status bw_expansion_from_digits(const uint8_t* preperiod, size_t preperiod_length,
                                          const uint8_t* period, size_t period_length, bw_expansion** out);
BW_API void bw_expansion_free(bw_expansion* e);

BW_API bw_status bw_expansion_get_info(const bw_expansion* e, bw_expansion_info* out);
/* First n digits of the expansion of 1 / of the modified expansion. */
BW_API bw_status bw_expansion_digits(const bw_expansion* e, size_t n, uint8_t* out);
BW_API bw_status bw_expansion_modified_digits(const bw_expansion* e, size_t n, uint8_t* out);
BW_API bw_status bw_expansion_format(const bw_expansion* e, char* buf, size_t cap, size_t* needed);
BW_API bw_status bw_expansion_to_json(const bw_expansion* e, char* buf, size_t cap, size_t* needed);
/* Period of the modified expansion, as text. */
BW_API bw_status bw_expansion_format_modified(const bw_expansion* e, char* buf, size_t cap, size_t* needed);

/* Nonzero positions <= upto. Writes at most cap entries; *count gets the
 * total. */
BW_API bw_status bw_expansion_nonzero(const bw_expansion* e, size_t upto, size_t* out, size_t cap, size_t* count);
BW_API bw_status bw_expansion_second_nonzero(const bw_expansion* e, size_t* out);
BW_API bw_status bw_expansion_max_zero_run(const bw_expansion* e, size_t n, size_t* out);

/* Certified bracket of beta with width <= tol ("1e-12", "1/1000", ...),
 * written as "[lo,hi]" with `digits` decimals (lo rounded down, hi up). */
BW_API bw_status bw_expansion_solve_beta(const bw_expansion* e, const char* tol, int digits, char* buf,
                                         size_t cap, size_t* needed);

/* ---- numeric beta ------------------------------------------------------ */

typedef struct bw_beta_digits_info {
  int finite;   /* the orbit of 1 reached 0 */
  int snapped;  /* finiteness decided by snapping to a simple Parry number */
} bw_beta_digits_info;

/* First n digits of the expansion of 1 for beta in [beta - tol, beta + tol]
 * (tol may be "0" for an exact rational). */
BW_API bw_status bw_beta_digits(const char* beta, const char* tol, size_t n, unsigned max_precision_bits,
                                uint8_t* out, bw_beta_digits_info* info);
/* Exact expansion for a numeric beta whose expansion of 1 is finite within
 * max_digits digits; BW_ERR_INVALID_INPUT otherwise. */
BW_API bw_status bw_beta_expansion(const char* beta, const char* tol, size_t max_digits,
                                   unsigned max_precision_bits, bw_expansion** out);
/* BETA_WORDS_MAX_PRECISION or the default. */
BW_API unsigned bw_max_precision_bits(void);

/* ---- words -------------------------------------------------------------- */

BW_API bw_status bw_is_admissible(const bw_expansion* e, const uint8_t* w, size_t n, int* out);
BW_API bw_status bw_max_word(const bw_expansion* e, size_t n, uint8_t* out);
/* *has = 0 when there is no successor / predecessor; out is then untouched. */
BW_API bw_status bw_successor(const bw_expansion* e, const uint8_t* w, size_t n, uint8_t* out, int* has);
BW_API bw_status bw_predecessor(const bw_expansion* e, const uint8_t* w, size_t n, uint8_t* out, int* has);
BW_API bw_status bw_count(const bw_expansion* e, size_t n, uint64_t* out);
BW_API bw_status bw_rank(const bw_expansion* e, const uint8_t* w, size_t n, uint64_t* out);
BW_API bw_status bw_unrank(const bw_expansion* e, size_t n, uint64_t index, uint8_t* out);
/* Text form of a word: bare digits when floor(beta) <= 9, else commas. */
BW_API bw_status bw_format_word(const bw_expansion* e, const uint8_t* w, size_t n, char* buf, size_t cap,
                                size_t* needed);
/* Parses a word in the same form; *n receives its length (at most cap). */
BW_API bw_status bw_parse_word(const char* text, uint8_t* out, size_t cap, size_t* n);

typedef struct bw_enumerator bw_enumerator;

/* Lex range [begin, end) of the admissible words of length n. The handle
 * keeps a reference to e, which must outlive it. */
BW_API bw_status bw_enumerator_new(const bw_expansion* e, size_t n, uint64_t begin, uint64_t end,
                                   bw_enumerator** out);
BW_API bw_status bw_enumerator_new_all(const bw_expansion* e, size_t n, bw_enumerator** out);
/* *word stays valid until the next call; *has = 0 at the end. */
BW_API bw_status bw_enumerator_next(bw_enumerator* it, const uint8_t** word, uint64_t* index, int* has);
BW_API void bw_enumerator_free(bw_enumerator* it);

/* ---- structure ---------------------------------------------------------- */

typedef struct bw_word_class {
  int full;            /* structural criterion */
  int full_by_tail;    /* tail criterion */
  size_t tail_s;       /* longest allowed s with w ending in eps_1..eps_s, 0 if none */
  size_t block_count;  /* blocks before the tail in the block form */
  size_t tail_length;  /* l */
  size_t mismatch;     /* first k with w_k < eps_k, 0 when there is none */
} bw_word_class;

BW_API bw_status bw_classify_word(const bw_expansion* e, const uint8_t* w, size_t n, bw_word_class* out);

typedef struct bw_segment {
  size_t length;
  uint8_t last_digit;
} bw_segment;

/* Writes at most cap blocks; *block_count gets the total. */
BW_API bw_status bw_decompose(const bw_expansion* e, const uint8_t* w, size_t n, bw_segment* blocks, size_t cap,
                              size_t* block_count, bw_segment* tail);

typedef enum bw_length_verdict { BW_VERDICT_FULL = 0, BW_VERDICT_NOT_FULL = 1, BW_VERDICT_UNDECIDED = 2 } bw_length_verdict;

typedef struct bw_interval {
  double lo;
  double hi;
} bw_interval;

typedef struct bw_cylinder_info {
  bw_interval left;
  bw_interval right;
  bw_interval length;
} bw_cylinder_info;

typedef struct bw_cylinders bw_cylinders;

/* Cylinders of order n; keeps a reference to e. */
BW_API bw_status bw_cylinders_new(const bw_expansion* e, size_t n, bw_cylinders** out);
BW_API bw_status bw_cylinder(const bw_cylinders* c, const uint8_t* w, size_t n, bw_cylinder_info* out);
BW_API bw_status bw_cylinder_verdict(const bw_cylinders* c, const uint8_t* w, size_t n, double tol,
                                     bw_length_verdict* out);
BW_API void bw_cylinders_free(bw_cylinders* c);
/* "[lo,hi]" with `digits` decimals, or "p/q" when lo == hi. */
BW_API bw_status bw_format_interval(bw_interval x, int digits, char* buf, size_t cap, size_t* needed);

/* ---- runs --------------------------------------------------------------- */

BW_API bw_status bw_tau(const bw_expansion* e, size_t s, size_t* out);
/* out[0..bound) = tau(1..bound) */
BW_API bw_status bw_tau_table(const bw_expansion* e, size_t bound, size_t* out);
/* Same table from the first `bound` digits of the expansion of 1 alone,
 * e.g. digits obtained from a numeric beta. */
BW_API bw_status bw_tau_table_from_digits(const uint8_t* digits, size_t bound, size_t* out);

typedef enum bw_run_kind { BW_RUN_FULL = 0, BW_RUN_NONFULL = 1 } bw_run_kind;

typedef struct bw_run {
  bw_run_kind kind;
  uint64_t start_index;
  uint64_t length;
  const uint8_t* first_word; /* valid until the next call on the stream */
  const uint8_t* last_word;
  size_t word_length;
} bw_run;

typedef struct bw_run_stream bw_run_stream;

BW_API bw_status bw_run_stream_new(const bw_expansion* e, size_t n, bw_run_stream** out);
BW_API bw_status bw_run_stream_next(bw_run_stream* s, bw_run* out, int* has);
BW_API void bw_run_stream_free(bw_run_stream* s);

typedef enum bw_set_id { BW_SET_F_ENUM = 0, BW_SET_N_ENUM = 1, BW_SET_F_FORMULA = 2, BW_SET_N_FORMULA = 3 } bw_set_id;

typedef struct bw_run_sets bw_run_sets;

/* Both provenances for (e, n); enumeration split over `shards` threads.
 * BW_ERR_INTEGER_BETA for integer beta. */
BW_API bw_status bw_run_sets_new(const bw_expansion* e, size_t n, unsigned shards, bw_run_sets** out);
BW_API bw_status bw_run_sets_get(const bw_run_sets* s, bw_set_id which, size_t* out, size_t cap, size_t* count);
/* F case 1..3, N case 1..10, and whether formulas equal enumeration. */
BW_API bw_status bw_run_sets_cases(const bw_run_sets* s, int* F_case, int* N_case, int* match);
BW_API void bw_run_sets_free(bw_run_sets* s);

typedef struct bw_extremes {
  size_t max_F, min_F, max_N, min_N;
} bw_extremes;

BW_API bw_status bw_run_extremes(const bw_expansion* e, size_t n, bw_extremes* out);
/* Predicted kind of the run ending at the maximal word, and its length when
 * full (0 otherwise). */
BW_API bw_status bw_s_max(const bw_expansion* e, size_t n, bw_run_kind* kind, size_t* length);
/* s = 0 picks the longest allowed s. */
BW_API bw_status bw_tail_run_prediction(const bw_expansion* e, const uint8_t* w, size_t n, size_t s,
                                        size_t* used_s, size_t* predicted, int* confirmed);

/* ---- verification ----------------------------------------------------- */

typedef struct bw_verify_options {
  size_t n_min;
  size_t n_max;
  unsigned shards;
  int corrupt_formula; /* harness self-test */
} bw_verify_options;

typedef struct bw_verify_report bw_verify_report;

BW_API const char* bw_bundled_corpus(void);
/* corpus == NULL uses the bundled corpus. */
BW_API bw_status bw_verify(const char* corpus, const bw_verify_options* options, bw_verify_report** out);
BW_API bw_status bw_verify_report_pass(const bw_verify_report* r, int* pass);
BW_API bw_status bw_verify_report_json(const bw_verify_report* r, char* buf, size_t cap, size_t* needed);
/* One "case_id n=N: message" line per kept failure. */
BW_API bw_status bw_verify_report_failures(const bw_verify_report* r, char* buf, size_t cap, size_t* needed);
BW_API void bw_verify_report_free(bw_verify_report* r);

#ifdef __cplusplus
}
#endif

#endif
