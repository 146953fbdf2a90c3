#include "betawords/betawords.h"

#include <cstring>
#include <new>
#include <string>

#include "betawords/certified.hpp"
#include "betawords/digits.hpp"
#include "betawords/runs.hpp"
#include "betawords/structure.hpp"
#include "betawords/verify.hpp"
#include "betawords/words.hpp"

using namespace betawords;

struct bw_expansion {
  ExpansionOfOne e;
};

struct bw_enumerator {
  WordEnumerator it;
};

struct bw_cylinders {
  const ExpansionOfOne* e;
  std::size_t n;
  CylinderCalculator calc;
};

struct bw_run_stream {
  RunStream stream;
  RunRecord last{};
};

struct bw_run_sets {
  RunSets enumerated;
  RunSets formula;
  int F_case;
  int N_case;
};

struct bw_verify_report {
  VerifyReport report;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_position = 0;

bw_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return BW_ERR_INVALID_INPUT;
    case ErrorCode::NotSelfDominant: return BW_ERR_NOT_SELF_DOMINANT;
    case ErrorCode::AlphabetMismatch: return BW_ERR_ALPHABET_MISMATCH;
    case ErrorCode::NotAdmissible: return BW_ERR_NOT_ADMISSIBLE;
    case ErrorCode::PrecisionExhausted: return BW_ERR_PRECISION_EXHAUSTED;
    case ErrorCode::IntegerBeta: return BW_ERR_INTEGER_BETA;
    case ErrorCode::TailMismatch: return BW_ERR_TAIL_MISMATCH;
  }
  return BW_ERR_INTERNAL;
}

bw_status fail(bw_status status, std::string message, std::size_t position = 0) {
  last_error = std::move(message);
  last_position = position;
  return status;
}

template <class F>
bw_status guarded(F&& body) {
  try {
    last_error.clear();
    last_position = 0;
    return body();
  } catch (const Error& ex) {
    return fail(status_of(ex.code()), ex.what(), ex.position());
  } catch (const std::bad_alloc&) {
    return fail(BW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& ex) {
    return fail(BW_ERR_INTERNAL, ex.what());
  } catch (...) {
    return fail(BW_ERR_INTERNAL, "unknown error");
  }
}

template <class... P>
bool any_null(const P*... p) {
  return ((p == nullptr) || ...);
}

bw_status null_argument() { return fail(BW_ERR_NULL_ARGUMENT, "required argument is NULL"); }

bw_status write_string(const std::string& s, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf == nullptr || cap < s.size() + 1) {
    return fail(BW_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return BW_OK;
}

std::span<const Digit> word_of(const uint8_t* w, std::size_t n) { return {w, n}; }

bw_status new_expansion(ExpansionOfOne e, bw_expansion** out) {
  *out = new bw_expansion{std::move(e)};
  return BW_OK;
}

BetaInterval bracket(const char* beta, const char* tol) {
  const Rational center = parse_rational(beta);
  const Rational t = tol ? parse_rational(tol) : Rational(0);
  if (t < 0) throw Error(ErrorCode::InvalidInput, "tolerance must be nonnegative");
  return BetaInterval::make(center - t, center + t);
}

}  // namespace

extern "C" {

const char* bw_status_name(bw_status status) {
  switch (status) {
    case BW_OK: return "Ok";
    case BW_ERR_INVALID_INPUT: return "InvalidInput";
    case BW_ERR_NOT_SELF_DOMINANT: return "NotSelfDominant";
    case BW_ERR_ALPHABET_MISMATCH: return "AlphabetMismatch";
    case BW_ERR_NOT_ADMISSIBLE: return "NotAdmissible";
    case BW_ERR_PRECISION_EXHAUSTED: return "PrecisionExhausted";
    case BW_ERR_INTEGER_BETA: return "IntegerBeta";
    case BW_ERR_TAIL_MISMATCH: return "TailMismatch";
    case BW_ERR_NULL_ARGUMENT: return "NullArgument";
    case BW_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case BW_ERR_OUT_OF_RANGE: return "OutOfRange";
    case BW_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* bw_last_error(void) { return last_error.c_str(); }
size_t bw_last_error_position(void) { return last_position; }
const char* bw_version(void) { return "1.0.0"; }

bw_status bw_expansion_parse(const char* text, bw_expansion** out) {
  if (any_null(text, out)) return null_argument();
  return guarded([&] { return new_expansion(ExpansionOfOne::validate(parse_sequence(text)), out); });
}

bw_status bw_expansion_from_json(const char* json, bw_expansion** out) {
  if (any_null(json, out)) return null_argument();
  return guarded([&] { return new_expansion(ExpansionOfOne::validate(sequence_from_json(json)), out); });
}

bw_status bw_expansion_from_digits(const uint8_t* preperiod, size_t preperiod_length, const uint8_t* period,
                                   size_t period_length, bw_expansion** out) {
  if (out == nullptr || (preperiod_length && !preperiod) || (period_length && !period)) return null_argument();
  return guarded([&] {
    std::vector<Digit> pre(preperiod, preperiod + preperiod_length);
    if (period_length == 0) return new_expansion(ExpansionOfOne::finite(std::move(pre)), out);
    return new_expansion(ExpansionOfOne::periodic(std::move(pre), {period, period + period_length}), out);
  });
}

void bw_expansion_free(bw_expansion* e) { delete e; }

bw_status bw_expansion_get_info(const bw_expansion* e, bw_expansion_info* out) {
  if (any_null(e, out)) return null_argument();
  const auto& x = e->e;
  *out = bw_expansion_info{x.is_finite(),       x.length(),
                           x.alphabet_max(),    x.is_integer_beta(),
                           x.sequence().preperiod_length(), x.sequence().period_length()};
  return BW_OK;
}

bw_status bw_expansion_digits(const bw_expansion* e, size_t n, uint8_t* out) {
  if (any_null(e) || (n && !out)) return null_argument();
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = e->e.digit(i);
  return BW_OK;
}

bw_status bw_expansion_modified_digits(const bw_expansion* e, size_t n, uint8_t* out) {
  if (any_null(e) || (n && !out)) return null_argument();
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = e->e.star(i);
  return BW_OK;
}

bw_status bw_expansion_format(const bw_expansion* e, char* buf, size_t cap, size_t* needed) {
  if (any_null(e)) return null_argument();
  return guarded([&] { return write_string(format_expansion(e->e), buf, cap, needed); });
}

bw_status bw_expansion_to_json(const bw_expansion* e, char* buf, size_t cap, size_t* needed) {
  if (any_null(e)) return null_argument();
  return guarded([&] { return write_string(expansion_to_json(e->e), buf, cap, needed); });
}

bw_status bw_expansion_format_modified(const bw_expansion* e, char* buf, size_t cap, size_t* needed) {
  if (any_null(e)) return null_argument();
  return guarded([&] {
    const auto& period = e->e.modified().digits.period();
    return write_string(format_digits(period, e->e.alphabet_max()), buf, cap, needed);
  });
}

bw_status bw_expansion_nonzero(const bw_expansion* e, size_t upto, size_t* out, size_t cap, size_t* count) {
  if (any_null(e, count) || (cap && !out)) return null_argument();
  return guarded([&] {
    const auto positions = nonzero_sequence(e->e, upto);
    *count = positions.size();
    for (std::size_t i = 0; i < positions.size() && i < cap; ++i) out[i] = positions[i];
    return BW_OK;
  });
}

bw_status bw_expansion_second_nonzero(const bw_expansion* e, size_t* out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = second_nonzero_position(e->e);
    return BW_OK;
  });
}

bw_status bw_expansion_max_zero_run(const bw_expansion* e, size_t n, size_t* out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = max_zero_run(e->e, n);
    return BW_OK;
  });
}

bw_status bw_expansion_solve_beta(const bw_expansion* e, const char* tol, int digits, char* buf, size_t cap,
                                  size_t* needed) {
  if (any_null(e, tol)) return null_argument();
  return guarded([&] {
    const BetaInterval b = solve_beta(e->e, parse_rational(tol));
    return write_string("[" + format_decimal(b.lo, digits, Rounding::Down) + "," +
                            format_decimal(b.hi, digits, Rounding::Up) + "]",
                        buf, cap, needed);
  });
}

bw_status bw_beta_digits(const char* beta, const char* tol, size_t n, unsigned max_precision_bits, uint8_t* out,
                         bw_beta_digits_info* info) {
  if (any_null(beta) || (n && !out)) return null_argument();
  return guarded([&] {
    const DigitExtraction x = expansion_digits_from_beta(bracket(beta, tol), n, max_precision_bits);
    std::copy(x.digits.begin(), x.digits.end(), out);
    if (info) *info = bw_beta_digits_info{x.finite, x.snapped};
    return BW_OK;
  });
}

bw_status bw_beta_expansion(const char* beta, const char* tol, size_t max_digits, unsigned max_precision_bits,
                            bw_expansion** out) {
  if (any_null(beta, out)) return null_argument();
  return guarded([&] {
    const DigitExtraction x = expansion_digits_from_beta(bracket(beta, tol), max_digits, max_precision_bits);
    auto e = x.expansion();
    if (!e) {
      return fail(BW_ERR_INVALID_INPUT, "expansion of 1 is not finite within " + std::to_string(max_digits) +
                                            " digits; give it with --seq instead");
    }
    return new_expansion(std::move(*e), out);
  });
}

unsigned bw_max_precision_bits(void) { return max_precision_from_env(); }

bw_status bw_is_admissible(const bw_expansion* e, const uint8_t* w, size_t n, int* out) {
  if (any_null(e, out) || (n && !w)) return null_argument();
  return guarded([&] {
    *out = is_admissible(word_of(w, n), e->e);
    return BW_OK;
  });
}

bw_status bw_max_word(const bw_expansion* e, size_t n, uint8_t* out) {
  return bw_expansion_modified_digits(e, n, out);
}

bw_status bw_successor(const bw_expansion* e, const uint8_t* w, size_t n, uint8_t* out, int* has) {
  if (any_null(e, out, has) || (n && !w)) return null_argument();
  return guarded([&] {
    const auto next = successor(word_of(w, n), e->e);
    *has = next.has_value();
    if (next) std::copy(next->begin(), next->end(), out);
    return BW_OK;
  });
}

bw_status bw_predecessor(const bw_expansion* e, const uint8_t* w, size_t n, uint8_t* out, int* has) {
  if (any_null(e, out, has) || (n && !w)) return null_argument();
  return guarded([&] {
    const auto prev = predecessor(word_of(w, n), e->e);
    *has = prev.has_value();
    if (prev) std::copy(prev->begin(), prev->end(), out);
    return BW_OK;
  });
}

bw_status bw_count(const bw_expansion* e, size_t n, uint64_t* out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = count(e->e, n);
    return BW_OK;
  });
}

bw_status bw_rank(const bw_expansion* e, const uint8_t* w, size_t n, uint64_t* out) {
  if (any_null(e, out) || (n && !w)) return null_argument();
  return guarded([&] {
    *out = rank(word_of(w, n), e->e);
    return BW_OK;
  });
}

bw_status bw_unrank(const bw_expansion* e, size_t n, uint64_t index, uint8_t* out) {
  if (any_null(e) || (n && !out)) return null_argument();
  return guarded([&] {
    if (index >= count(e->e, n)) return fail(BW_ERR_OUT_OF_RANGE, "index beyond the last word");
    const Word w = unrank(e->e, n, index);
    std::copy(w.begin(), w.end(), out);
    return BW_OK;
  });
}

bw_status bw_format_word(const bw_expansion* e, const uint8_t* w, size_t n, char* buf, size_t cap, size_t* needed) {
  if (any_null(e) || (n && !w)) return null_argument();
  return guarded([&] { return write_string(format_digits(word_of(w, n), e->e.alphabet_max()), buf, cap, needed); });
}

bw_status bw_parse_word(const char* text, uint8_t* out, size_t cap, size_t* n) {
  if (any_null(text, n) || (cap && !out)) return null_argument();
  return guarded([&] {
    const auto digits = parse_digits(text);
    *n = digits.size();
    if (digits.size() > cap) return fail(BW_ERR_BUFFER_TOO_SMALL, "word longer than the buffer");
    std::copy(digits.begin(), digits.end(), out);
    return BW_OK;
  });
}

bw_status bw_enumerator_new(const bw_expansion* e, size_t n, uint64_t begin, uint64_t end, bw_enumerator** out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    if (end > count(e->e, n)) return fail(BW_ERR_OUT_OF_RANGE, "range end beyond the last word");
    if (begin > end) return fail(BW_ERR_OUT_OF_RANGE, "range begins after its end");
    *out = new bw_enumerator{WordEnumerator(e->e, n, begin, end)};
    return BW_OK;
  });
}

bw_status bw_enumerator_new_all(const bw_expansion* e, size_t n, bw_enumerator** out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = new bw_enumerator{WordEnumerator(e->e, n)};
    return BW_OK;
  });
}

bw_status bw_enumerator_next(bw_enumerator* it, const uint8_t** word, uint64_t* index, int* has) {
  if (any_null(it, has)) return null_argument();
  *has = it->it.next();
  if (*has) {
    if (word) *word = it->it.current().data();
    if (index) *index = it->it.index();
  }
  return BW_OK;
}

void bw_enumerator_free(bw_enumerator* it) { delete it; }

bw_status bw_classify_word(const bw_expansion* e, const uint8_t* w, size_t n, bw_word_class* out) {
  if (any_null(e, out) || (n && !w)) return null_argument();
  return guarded([&] {
    const auto word = word_of(w, n);
    require_admissible(word, e->e);
    const Decomposition d = decompose(word, e->e);
    const auto m = mismatch(word, e->e);
    const std::size_t s = assume_admissible::tail_prefix_length(word, e->e);
    *out = bw_word_class{assume_admissible::is_full(word, e->e), s == 0, s, d.blocks.size(), d.tail.length,
                         m.value_or(0)};
    return BW_OK;
  });
}

bw_status bw_decompose(const bw_expansion* e, const uint8_t* w, size_t n, bw_segment* blocks, size_t cap,
                       size_t* block_count, bw_segment* tail) {
  if (any_null(e, block_count, tail) || (n && !w) || (cap && !blocks)) return null_argument();
  return guarded([&] {
    const Decomposition d = decompose(word_of(w, n), e->e);
    *block_count = d.blocks.size();
    for (std::size_t i = 0; i < d.blocks.size() && i < cap; ++i) {
      blocks[i] = bw_segment{d.blocks[i].length, d.blocks[i].last_digit};
    }
    *tail = bw_segment{d.tail.length, d.tail.last_digit};
    return BW_OK;
  });
}

bw_status bw_cylinders_new(const bw_expansion* e, size_t n, bw_cylinders** out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = new bw_cylinders{&e->e, n, CylinderCalculator(e->e, n)};
    return BW_OK;
  });
}

static bw_status check_cylinder_word(const bw_cylinders* c, const uint8_t* w, size_t n) {
  if (n != c->n) return fail(BW_ERR_INVALID_INPUT, "word length differs from the cylinder order");
  require_admissible(word_of(w, n), *c->e);
  return BW_OK;
}

bw_status bw_cylinder(const bw_cylinders* c, const uint8_t* w, size_t n, bw_cylinder_info* out) {
  if (any_null(c, out) || (n && !w)) return null_argument();
  return guarded([&] {
    if (const auto s = check_cylinder_word(c, w, n); s != BW_OK) return s;
    const CylinderInterval cyl = c->calc.cylinder(word_of(w, n));
    *out = bw_cylinder_info{{cyl.left.lo, cyl.left.hi}, {cyl.right.lo, cyl.right.hi}, {cyl.length.lo, cyl.length.hi}};
    return BW_OK;
  });
}

bw_status bw_cylinder_verdict(const bw_cylinders* c, const uint8_t* w, size_t n, double tol, bw_length_verdict* out) {
  if (any_null(c, out) || (n && !w)) return null_argument();
  return guarded([&] {
    if (const auto s = check_cylinder_word(c, w, n); s != BW_OK) return s;
    switch (c->calc.classify(word_of(w, n), tol)) {
      case LengthVerdict::Full: *out = BW_VERDICT_FULL; break;
      case LengthVerdict::NotFull: *out = BW_VERDICT_NOT_FULL; break;
      case LengthVerdict::Undecided: *out = BW_VERDICT_UNDECIDED; break;
    }
    return BW_OK;
  });
}

void bw_cylinders_free(bw_cylinders* c) { delete c; }

bw_status bw_format_interval(bw_interval x, int digits, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!(x.lo <= x.hi)) return fail(BW_ERR_INVALID_INPUT, "interval has lo > hi");
    return write_string(format_enclosure(Enclosure{x.lo, x.hi}, digits), buf, cap, needed);
  });
}

bw_status bw_tau(const bw_expansion* e, size_t s, size_t* out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = tau(s, e->e);
    return BW_OK;
  });
}

bw_status bw_tau_table(const bw_expansion* e, size_t bound, size_t* out) {
  if (any_null(e) || (bound && !out)) return null_argument();
  return guarded([&] {
    const auto t = tau_table(e->e, bound);
    std::copy(t.begin(), t.end(), out);
    return BW_OK;
  });
}

bw_status bw_tau_table_from_digits(const uint8_t* digits, size_t bound, size_t* out) {
  if (bound && (!digits || !out)) return null_argument();
  return guarded([&] {
    const auto t = tau_table(word_of(digits, bound));
    std::copy(t.begin(), t.end(), out);
    return BW_OK;
  });
}

bw_status bw_run_stream_new(const bw_expansion* e, size_t n, bw_run_stream** out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = new bw_run_stream{RunStream(e->e, n), {}};
    return BW_OK;
  });
}

bw_status bw_run_stream_next(bw_run_stream* s, bw_run* out, int* has) {
  if (any_null(s, out, has)) return null_argument();
  return guarded([&] {
    auto r = s->stream.next();
    *has = r.has_value();
    if (r) {
      s->last = std::move(*r);
      *out = bw_run{s->last.kind == RunKind::Full ? BW_RUN_FULL : BW_RUN_NONFULL,
                    s->last.start_index,
                    s->last.length,
                    s->last.first_word.data(),
                    s->last.last_word.data(),
                    s->last.first_word.size()};
    }
    return BW_OK;
  });
}

void bw_run_stream_free(bw_run_stream* s) { delete s; }

bw_status bw_run_sets_new(const bw_expansion* e, size_t n, unsigned shards, bw_run_sets** out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    require_non_integer(e->e);
    if (n == 0) return fail(BW_ERR_INVALID_INPUT, "n must be at least 1");
    *out = new bw_run_sets{run_sets_enumerated(e->e, n, shards == 0 ? 1 : shards), run_sets_formula(e->e, n),
                           F_formula_case(e->e, n), N_formula_case(e->e, n)};
    return BW_OK;
  });
}

bw_status bw_run_sets_get(const bw_run_sets* s, bw_set_id which, size_t* out, size_t cap, size_t* count) {
  if (any_null(s, count) || (cap && !out)) return null_argument();
  const LengthSet* set = nullptr;
  switch (which) {
    case BW_SET_F_ENUM: set = &s->enumerated.F; break;
    case BW_SET_N_ENUM: set = &s->enumerated.N; break;
    case BW_SET_F_FORMULA: set = &s->formula.F; break;
    case BW_SET_N_FORMULA: set = &s->formula.N; break;
    default: return fail(BW_ERR_INVALID_INPUT, "unknown set id");
  }
  *count = set->size();
  std::size_t i = 0;
  for (auto it = set->begin(); it != set->end() && i < cap; ++it) out[i++] = *it;
  return BW_OK;
}

bw_status bw_run_sets_cases(const bw_run_sets* s, int* F_case, int* N_case, int* match) {
  if (any_null(s)) return null_argument();
  if (F_case) *F_case = s->F_case;
  if (N_case) *N_case = s->N_case;
  if (match) *match = s->enumerated.F == s->formula.F && s->enumerated.N == s->formula.N;
  return BW_OK;
}

void bw_run_sets_free(bw_run_sets* s) { delete s; }

bw_status bw_run_extremes(const bw_expansion* e, size_t n, bw_extremes* out) {
  if (any_null(e, out)) return null_argument();
  return guarded([&] {
    *out = bw_extremes{max_F(e->e, n), min_F(e->e, n), max_N(e->e, n), min_N(e->e, n)};
    return BW_OK;
  });
}

bw_status bw_s_max(const bw_expansion* e, size_t n, bw_run_kind* kind, size_t* length) {
  if (any_null(e, kind, length)) return null_argument();
  return guarded([&] {
    const SMaxClass c = s_max_classify(e->e, n);
    *kind = c.kind == RunKind::Full ? BW_RUN_FULL : BW_RUN_NONFULL;
    *length = c.length;
    return BW_OK;
  });
}

bw_status bw_tail_run_prediction(const bw_expansion* e, const uint8_t* w, size_t n, size_t s, size_t* used_s,
                                 size_t* predicted, int* confirmed) {
  if (any_null(e, used_s, predicted, confirmed) || (n && !w)) return null_argument();
  return guarded([&] {
    const auto p = s == 0 ? tail_run_prediction(word_of(w, n), e->e) : tail_run_prediction(word_of(w, n), e->e, s);
    *used_s = p.s;
    *predicted = p.predicted;
    *confirmed = p.confirmed;
    return BW_OK;
  });
}

const char* bw_bundled_corpus(void) { return bundled_corpus_text().data(); }

bw_status bw_verify(const char* corpus, const bw_verify_options* options, bw_verify_report** out) {
  if (any_null(options, out)) return null_argument();
  return guarded([&] {
    VerifyOptions opt;
    opt.n_min = options->n_min;
    opt.n_max = options->n_max;
    opt.shards = options->shards == 0 ? 1 : options->shards;
    opt.corrupt_formula = options->corrupt_formula != 0;
    const auto entries = corpus ? parse_corpus(corpus) : bundled_corpus();
    if (entries.empty()) return fail(BW_ERR_INVALID_INPUT, "corpus has no entries");
    *out = new bw_verify_report{verify(entries, opt)};
    return BW_OK;
  });
}

bw_status bw_verify_report_pass(const bw_verify_report* r, int* pass) {
  if (any_null(r, pass)) return null_argument();
  *pass = r->report.pass();
  return BW_OK;
}

bw_status bw_verify_report_json(const bw_verify_report* r, char* buf, size_t cap, size_t* needed) {
  if (any_null(r)) return null_argument();
  return guarded([&] { return write_string(r->report.to_json(), buf, cap, needed); });
}

bw_status bw_verify_report_failures(const bw_verify_report* r, char* buf, size_t cap, size_t* needed) {
  if (any_null(r)) return null_argument();
  return guarded([&] {
    std::string text;
    for (const auto& x : r->report.expansions) {
      for (const auto& f : x.failures) text += x.case_id + ": " + f + "\n";
    }
    for (const auto& c : r->report.cases) {
      for (const auto& f : c.failures) text += c.case_id + " n=" + std::to_string(c.n) + ": " + f + "\n";
    }
    return write_string(text, buf, cap, needed);
  });
}

void bw_verify_report_free(bw_verify_report* r) { delete r; }

}  // extern "C"
