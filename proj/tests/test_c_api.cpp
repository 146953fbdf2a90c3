#include "doctest.h"

#include <cstring>
#include <string>
#include <vector>

#include "betawords/betawords.h"

namespace {

struct Expansion {
  bw_expansion* e = nullptr;
  explicit Expansion(const char* text) { REQUIRE(bw_expansion_parse(text, &e) == BW_OK); }
  ~Expansion() { bw_expansion_free(e); }
  operator const bw_expansion*() const { return e; }
};

template <class F>
std::string text(F&& call) {
  std::size_t needed = 0;
  REQUIRE(call(nullptr, 0, &needed) == BW_ERR_BUFFER_TOO_SMALL);
  std::string out(needed, '\0');
  REQUIRE(call(out.data(), out.size(), &needed) == BW_OK);
  out.resize(needed - 1);
  return out;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::strcmp(bw_status_name(BW_OK), "Ok") == 0);
  CHECK(std::strcmp(bw_status_name(BW_ERR_NOT_SELF_DOMINANT), "NotSelfDominant") == 0);
  CHECK(std::strlen(bw_version()) > 0);

  bw_expansion* e = nullptr;
  CHECK(bw_expansion_parse("1,2", &e) == BW_ERR_NOT_SELF_DOMINANT);
  CHECK(e == nullptr);
  CHECK(bw_last_error_position() == 1);
  CHECK(std::strlen(bw_last_error()) > 0);

  CHECK(bw_expansion_parse(nullptr, &e) == BW_ERR_NULL_ARGUMENT);
  CHECK(bw_expansion_parse("1,1", nullptr) == BW_ERR_NULL_ARGUMENT);
  CHECK(bw_expansion_parse("x", &e) == BW_ERR_INVALID_INPUT);
  bw_expansion_free(nullptr);
}

TEST_CASE("expansion handle") {
  Expansion e("3,0,2,0,0,0,0,1");
  bw_expansion_info info{};
  REQUIRE(bw_expansion_get_info(e, &info) == BW_OK);
  CHECK(info.is_finite == 1);
  CHECK(info.length == 8);
  CHECK(info.alphabet_max == 3);
  CHECK(info.is_integer_beta == 0);

  uint8_t digits[10], star[10];
  REQUIRE(bw_expansion_digits(e, 10, digits) == BW_OK);
  REQUIRE(bw_expansion_modified_digits(e, 10, star) == BW_OK);
  const uint8_t want_digits[10] = {3, 0, 2, 0, 0, 0, 0, 1, 0, 0};
  const uint8_t want_star[10] = {3, 0, 2, 0, 0, 0, 0, 0, 3, 0};
  CHECK(std::memcmp(digits, want_digits, 10) == 0);
  CHECK(std::memcmp(star, want_star, 10) == 0);

  CHECK(text([&](char* b, size_t c, size_t* n) { return bw_expansion_format(e, b, c, n); }) == "3,0,2,0,0,0,0,1");
  CHECK(text([&](char* b, size_t c, size_t* n) { return bw_expansion_format_modified(e, b, c, n); }) == "30200000");
  CHECK(text([&](char* b, size_t c, size_t* n) { return bw_expansion_to_json(e, b, c, n); }) ==
        R"({"finite":[3,0,2,0,0,0,0,1]})");

  size_t count = 0;
  CHECK(bw_expansion_nonzero(e, 10, nullptr, 0, &count) == BW_OK);
  CHECK(count == 3);
  size_t pos[3];
  CHECK(bw_expansion_nonzero(e, 10, pos, 3, &count) == BW_OK);
  CHECK(pos[0] == 1);
  CHECK(pos[1] == 3);
  CHECK(pos[2] == 8);
  size_t n2 = 0, r = 0;
  CHECK(bw_expansion_second_nonzero(e, &n2) == BW_OK);
  CHECK(n2 == 3);
  CHECK(bw_expansion_max_zero_run(e, 8, &r) == BW_OK);
  CHECK(r == 5);

  const std::string beta =
      text([&](char* b, size_t c, size_t* n) { return bw_expansion_solve_beta(e, "1e-9", 9, b, c, n); });
  CAPTURE(beta);
  REQUIRE(beta.size() > 2);
  const auto comma = beta.find(',');
  REQUIRE(comma != std::string::npos);
  const double lo = std::stod(beta.substr(1, comma - 1));
  const double hi = std::stod(beta.substr(comma + 1));
  CHECK(lo <= 3.196084845751923);
  CHECK(hi >= 3.196084845751922);
  CHECK(hi - lo <= 2.1e-9);
  CHECK(beta.find('.') == 2);
  CHECK(comma == 12);

  // A buffer one byte short is refused without writing.
  char small[15];
  std::memset(small, 'x', sizeof small);
  size_t needed = 0;
  CHECK(bw_expansion_format(e, small, sizeof small, &needed) == BW_ERR_BUFFER_TOO_SMALL);
  CHECK(needed == 16);
  CHECK(small[0] == 'x');
}

TEST_CASE("construction from JSON and digits") {
  bw_expansion* e = nullptr;
  REQUIRE(bw_expansion_from_json(R"({"preperiod":[2,0,1],"period":[0,0,1]})", &e) == BW_OK);
  bw_expansion_info info{};
  bw_expansion_get_info(e, &info);
  CHECK(info.is_finite == 0);
  CHECK(info.alphabet_max == 2);
  bw_expansion_free(e);

  const uint8_t pre[] = {1, 0, 0}, per[] = {1, 0, 0, 0};
  REQUIRE(bw_expansion_from_digits(pre, 3, per, 4, &e) == BW_OK);
  size_t n2 = 0;
  bw_expansion_second_nonzero(e, &n2);
  CHECK(n2 == 4);
  bw_expansion_free(e);

  const uint8_t fin[] = {1, 1};
  REQUIRE(bw_expansion_from_digits(fin, 2, nullptr, 0, &e) == BW_OK);
  bw_expansion_free(e);
  CHECK(bw_expansion_from_json("[1]", &e) == BW_ERR_INVALID_INPUT);
}

TEST_CASE("numeric beta") {
  uint8_t d[6];
  bw_beta_digits_info info{};
  REQUIRE(bw_beta_digits("1.618033988749", "1e-12", 6, bw_max_precision_bits(), d, &info) == BW_OK);
  const uint8_t golden[6] = {1, 1, 0, 0, 0, 0};
  CHECK(std::memcmp(d, golden, 6) == 0);
  CHECK(info.finite == 1);
  CHECK(info.snapped == 1);

  REQUIRE(bw_beta_digits("5/2", "0", 4, 64, d, &info) == BW_OK);
  const uint8_t five_halves[4] = {2, 1, 0, 1};
  CHECK(std::memcmp(d, five_halves, 4) == 0);
  CHECK(info.finite == 0);

  CHECK(bw_beta_digits("2", "1", 3, 64, d, nullptr) == BW_ERR_INVALID_INPUT);
  CHECK(bw_beta_digits("2.3", "1", 3, 64, d, nullptr) == BW_ERR_PRECISION_EXHAUSTED);
  CHECK(bw_last_error_position() == 1);

  bw_expansion* e = nullptr;
  REQUIRE(bw_beta_expansion("1.618033988749", "1e-12", 16, 256, &e) == BW_OK);
  CHECK(text([&](char* b, size_t c, size_t* n) { return bw_expansion_format(e, b, c, n); }) == "1,1");
  bw_expansion_free(e);
  CHECK(bw_beta_expansion("5/2", "0", 16, 256, &e) == BW_ERR_INVALID_INPUT);
}

TEST_CASE("words") {
  Expansion e("1,1");
  const uint8_t ok[] = {1, 0, 1}, bad[] = {1, 1, 0}, big[] = {2};
  int adm = -1;
  CHECK(bw_is_admissible(e, ok, 3, &adm) == BW_OK);
  CHECK(adm == 1);
  CHECK(bw_is_admissible(e, bad, 3, &adm) == BW_OK);
  CHECK(adm == 0);
  CHECK(bw_is_admissible(e, big, 1, &adm) == BW_ERR_ALPHABET_MISMATCH);

  uint64_t c = 0;
  CHECK(bw_count(e, 20, &c) == BW_OK);
  CHECK(c == 17711);

  uint8_t w[3];
  CHECK(bw_max_word(e, 3, w) == BW_OK);
  CHECK(std::memcmp(w, ok, 3) == 0);
  int has = -1;
  CHECK(bw_successor(e, ok, 3, w, &has) == BW_OK);
  CHECK(has == 0);
  CHECK(bw_predecessor(e, ok, 3, w, &has) == BW_OK);
  CHECK(has == 1);
  const uint8_t prev[] = {1, 0, 0};
  CHECK(std::memcmp(w, prev, 3) == 0);
  CHECK(bw_successor(e, bad, 3, w, &has) == BW_ERR_NOT_ADMISSIBLE);

  uint64_t idx = 0;
  CHECK(bw_rank(e, ok, 3, &idx) == BW_OK);
  CHECK(idx == 4);
  CHECK(bw_unrank(e, 3, 2, w) == BW_OK);
  const uint8_t third[] = {0, 1, 0};
  CHECK(std::memcmp(w, third, 3) == 0);
  CHECK(bw_unrank(e, 3, 5, w) == BW_ERR_OUT_OF_RANGE);

  CHECK(text([&](char* b, size_t cap, size_t* n) { return bw_format_word(e, ok, 3, b, cap, n); }) == "101");
  uint8_t parsed[8];
  size_t len = 0;
  CHECK(bw_parse_word("12,0,3", parsed, 8, &len) == BW_OK);
  CHECK(len == 3);
  CHECK(parsed[0] == 12);
  CHECK(bw_parse_word("0101", parsed, 2, &len) == BW_ERR_BUFFER_TOO_SMALL);
}

TEST_CASE("enumerator") {
  Expansion e("1,1");
  bw_enumerator* it = nullptr;
  REQUIRE(bw_enumerator_new_all(e, 4, &it) == BW_OK);
  const uint8_t* w = nullptr;
  uint64_t index = 0;
  int has = 0;
  uint64_t seen = 0;
  while (bw_enumerator_next(it, &w, &index, &has) == BW_OK && has) {
    CHECK(index == seen);
    ++seen;
  }
  CHECK(seen == 8);
  bw_enumerator_free(it);

  REQUIRE(bw_enumerator_new(e, 4, 2, 5, &it) == BW_OK);
  seen = 0;
  while (bw_enumerator_next(it, &w, &index, &has) == BW_OK && has) ++seen;
  CHECK(seen == 3);
  bw_enumerator_free(it);
  CHECK(bw_enumerator_new(e, 4, 5, 2, &it) == BW_ERR_OUT_OF_RANGE);
  CHECK(bw_enumerator_new(e, 4, 0, 9, &it) == BW_ERR_OUT_OF_RANGE);
}

TEST_CASE("classification and cylinders") {
  Expansion e("1,0,1,0,0,0,1");
  const uint8_t w[] = {1, 0, 0, 0, 1, 0, 1};
  bw_word_class wc{};
  REQUIRE(bw_classify_word(e, w, 7, &wc) == BW_OK);
  CHECK(wc.full == 0);
  CHECK(wc.full_by_tail == 0);
  CHECK(wc.tail_s == 3);
  CHECK(wc.block_count == 2);
  CHECK(wc.tail_length == 3);
  CHECK(wc.mismatch == 3);

  bw_segment blocks[4], tail{};
  size_t nblocks = 0;
  REQUIRE(bw_decompose(e, w, 7, blocks, 4, &nblocks, &tail) == BW_OK);
  CHECK(nblocks == 2);
  CHECK(blocks[0].length == 3);
  CHECK(blocks[1].length == 1);
  CHECK(tail.length == 3);
  CHECK(tail.last_digit == 1);

  bw_cylinders* c = nullptr;
  REQUIRE(bw_cylinders_new(e, 7, &c) == BW_OK);
  bw_cylinder_info info{};
  REQUIRE(bw_cylinder(c, w, 7, &info) == BW_OK);
  CHECK(info.left.lo <= info.left.hi);
  CHECK(info.length.lo > 0);
  bw_length_verdict v{};
  REQUIRE(bw_cylinder_verdict(c, w, 7, 1e-12, &v) == BW_OK);
  CHECK(v == BW_VERDICT_NOT_FULL);
  const uint8_t zeros[7] = {};
  REQUIRE(bw_cylinder_verdict(c, zeros, 7, 1e-12, &v) == BW_OK);
  CHECK(v == BW_VERDICT_FULL);
  CHECK(bw_cylinder(c, w, 6, &info) == BW_ERR_INVALID_INPUT);
  bw_cylinders_free(c);

  const bw_interval half{0.5, 0.5};
  CHECK(text([&](char* b, size_t cap, size_t* n) { return bw_format_interval(half, 3, b, cap, n); }) == "1/2");
}

TEST_CASE("tau and runs") {
  Expansion e("1,0,1,0,0,0,1");
  size_t t[8];
  REQUIRE(bw_tau_table(e, 8, t) == BW_OK);
  const size_t want[8] = {1, 2, 1, 2, 3, 2, 1, 2};
  CHECK(std::memcmp(t, want, sizeof t) == 0);
  const uint8_t digits[8] = {1, 0, 1, 0, 0, 0, 1, 0};
  size_t t2[8];
  REQUIRE(bw_tau_table_from_digits(digits, 8, t2) == BW_OK);
  CHECK(std::memcmp(t2, want, sizeof t) == 0);
  size_t one = 0;
  CHECK(bw_tau(e, 5, &one) == BW_OK);
  CHECK(one == 3);

  bw_run_sets* sets = nullptr;
  REQUIRE(bw_run_sets_new(e, 8, 3, &sets) == BW_OK);
  int F_case = 0, N_case = 0, match = 0;
  REQUIRE(bw_run_sets_cases(sets, &F_case, &N_case, &match) == BW_OK);
  CHECK(match == 1);
  CHECK(F_case == 3);
  CHECK(N_case == 10);
  size_t count = 0;
  CHECK(bw_run_sets_get(sets, BW_SET_N_ENUM, nullptr, 0, &count) == BW_OK);
  CHECK(count == 3);
  size_t N[3];
  CHECK(bw_run_sets_get(sets, BW_SET_N_FORMULA, N, 3, &count) == BW_OK);
  CHECK(N[2] == 3);
  bw_run_sets_free(sets);

  bw_extremes ex{};
  REQUIRE(bw_run_extremes(e, 8, &ex) == BW_OK);
  CHECK(ex.max_N == 3);
  CHECK(ex.min_N == 1);
  CHECK(ex.max_F == 2);

  bw_run_stream* s = nullptr;
  REQUIRE(bw_run_stream_new(e, 8, &s) == BW_OK);
  bw_run r{};
  int has = 0;
  uint64_t total = 0;
  bw_run_kind last_kind = BW_RUN_FULL;
  while (bw_run_stream_next(s, &r, &has) == BW_OK && has) {
    total += r.length;
    CHECK(r.word_length == 8);
    last_kind = r.kind;
  }
  bw_run_stream_free(s);
  uint64_t c = 0;
  bw_count(e, 8, &c);
  CHECK(total == c);

  bw_run_kind kind{};
  size_t len = 0;
  REQUIRE(bw_s_max(e, 8, &kind, &len) == BW_OK);
  CHECK(kind == last_kind);

  const uint8_t w[] = {0, 0, 0, 1, 0, 1, 0, 0};
  size_t used = 0, predicted = 0;
  int confirmed = 0;
  REQUIRE(bw_tail_run_prediction(e, w, 8, 0, &used, &predicted, &confirmed) == BW_OK);
  CHECK(used == 5);
  CHECK(predicted == 3);
  CHECK(confirmed == 1);
  const uint8_t full[] = {0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(bw_tail_run_prediction(e, full, 8, 0, &used, &predicted, &confirmed) == BW_ERR_TAIL_MISMATCH);

  Expansion two("2");
  CHECK(bw_run_sets_new(two, 3, 1, &sets) == BW_ERR_INTEGER_BETA);
}

TEST_CASE("verify through the C interface") {
  bw_verify_options opt{2, 5, 2, 0};
  bw_verify_report* rep = nullptr;
  REQUIRE(bw_verify(nullptr, &opt, &rep) == BW_OK);
  int pass = 0;
  CHECK(bw_verify_report_pass(rep, &pass) == BW_OK);
  CHECK(pass == 1);
  const std::string json = text([&](char* b, size_t c, size_t* n) { return bw_verify_report_json(rep, b, c, n); });
  CHECK(json.rfind("{\n  \"pass\": true", 0) == 0);
  CHECK(text([&](char* b, size_t c, size_t* n) { return bw_verify_report_failures(rep, b, c, n); }).empty());
  bw_verify_report_free(rep);

  opt.corrupt_formula = 1;
  REQUIRE(bw_verify("golden 1,1\n", &opt, &rep) == BW_OK);
  CHECK(bw_verify_report_pass(rep, &pass) == BW_OK);
  CHECK(pass == 0);
  const std::string failures =
      text([&](char* b, size_t c, size_t* n) { return bw_verify_report_failures(rep, b, c, n); });
  CHECK(failures.rfind("golden n=2: ", 0) == 0);
  bw_verify_report_free(rep);

  CHECK(bw_verify("3\n", &opt, &rep) == BW_ERR_INTEGER_BETA);
  CHECK(bw_verify("1,2\n", &opt, &rep) == BW_ERR_NOT_SELF_DOMINANT);
  CHECK(std::string(bw_bundled_corpus()).find("golden") != std::string::npos);
}
