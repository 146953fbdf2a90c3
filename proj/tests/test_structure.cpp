#include "doctest.h"

#include "betawords/structure.hpp"
#include "betawords/verify.hpp"
#include "oracles.hpp"

using namespace betawords;

namespace {

// Continuation depth for the definition-based oracle.
std::size_t depth_for(const ExpansionOfOne& e) {
  const std::size_t period = e.sequence().preperiod_length() + e.sequence().period_length();
  return e.alphabet_max() >= 3 ? 8 : std::min<std::size_t>(period + 5, 11);
}

std::size_t max_n_for(const ExpansionOfOne& e) { return e.alphabet_max() >= 3 ? 5 : e.alphabet_max() == 2 ? 6 : 8; }

// a + b φ with integer a, b; φ^{-k} = (-1)^k (F_{k+1} - F_k φ).
struct GoldenValue {
  mpz_class a = 0, b = 0;
};

GoldenValue inverse_power(unsigned k) {
  const long sign = k % 2 == 0 ? 1 : -1;
  return {sign * mpz_class(oracle::fibonacci(k + 1)), -sign * mpz_class(oracle::fibonacci(k))};
}

GoldenValue golden_pi(const Word& w) {
  GoldenValue v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto p = inverse_power(static_cast<unsigned>(i + 1));
    v.a += w[i] * p.a;
    v.b += w[i] * p.b;
  }
  return v;
}

// The double enclosure meets the exact value, bracketed with φ to 1e-30.
bool meets(const Enclosure& x, const GoldenValue& v) {
  const Rational phi_lo = parse_rational("1.618033988749894848204586834365"),
                 phi_hi = parse_rational("1.618033988749894848204586834366");
  Rational lo = Rational(v.a) + Rational(v.b) * phi_lo, hi = Rational(v.a) + Rational(v.b) * phi_hi;
  if (lo > hi) std::swap(lo, hi);
  return Rational(x.lo) <= hi && lo <= Rational(x.hi);
}

}  // namespace

TEST_CASE("mismatch") {
  const auto e = ExpansionOfOne::finite({1, 0, 1, 0, 0, 0, 1});
  CHECK(mismatch(Word{0, 1, 0}, e) == 1);
  CHECK(mismatch(Word{1, 0, 0}, e) == 3);
  CHECK_FALSE(mismatch(Word{1, 0, 1, 0}, e).has_value());
  CHECK_FALSE(mismatch(Word{1, 0, 0}, ExpansionOfOne::finite({1, 0, 0, 1})).has_value());
}

TEST_CASE("block form") {
  const auto e = ExpansionOfOne::finite({1, 0, 1, 0, 0, 0, 1});
  const Word w{1, 0, 0, 0, 1, 0, 1};
  const auto d = decompose(w, e);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0] == Segment{3, 0});
  CHECK(d.blocks[1] == Segment{1, 0});
  CHECK(d.tail == Segment{3, 1});
  CHECK(reconstruct(d, e) == w);
  CHECK(is_full(Word{0, 0, 0}, e));
  CHECK_FALSE(is_full(Word{0, 1, 0}, e));
  CHECK_FALSE(is_full(w, e));
  CHECK_THROWS_AS(decompose(Word{1, 1}, e), Error);
}

TEST_CASE("golden n = 3 in lex order") {
  const auto golden = ExpansionOfOne::finite({1, 1});
  std::vector<bool> flags;
  for (const auto& w : enumerate(golden, 3)) flags.push_back(is_full(w, golden));
  CHECK(flags == std::vector<bool>{true, false, true, true, false});
  CHECK(enumerate(golden, 1).size() == 2);
  CHECK(enumerate(ExpansionOfOne::finite({3, 0, 2, 0, 0, 0, 0, 1}), 1).size() == 4);
}

TEST_CASE("a prefix before an eps-prefix tail need not be full") {
  const auto e = ExpansionOfOne::finite({1, 0, 1, 0, 0, 1});
  CHECK(is_admissible(Word{0, 0, 1, 0, 1, 0}, e));
  CHECK(tail_prefix_length(Word{0, 0, 1, 0, 1, 0}, e) == 4);
  CHECK_FALSE(is_full(Word{0, 0, 1, 0}, e));
}

TEST_CASE("decomposition round trip and block invariants") {
  for (const auto& entry : bundled_corpus()) {
    const auto& e = entry.expansion;
    CAPTURE(entry.case_id);
    for (std::size_t n = 1; n <= max_n_for(e) + 2; ++n) {
      for (const auto& w : enumerate(e, n)) {
        const auto d = decompose(w, e);
        CHECK(reconstruct(d, e) == w);
        std::size_t total = d.tail.length;
        for (const auto& b : d.blocks) {
          total += b.length;
          CHECK(b.last_digit < e.digit(b.length));
        }
        CHECK(total == n);
        CHECK(d.tail.last_digit <= e.digit(d.tail.length));
        CHECK(assume_admissible::block_count(w, e) == d.blocks.size());
        CHECK(assume_admissible::tail_length(w, e) == d.tail.length);
        CHECK(is_full(w, e) == (d.tail.last_digit < e.digit(d.tail.length)));
      }
    }
  }
}

TEST_CASE("structural and tail criteria match the definition") {
  std::vector<ExpansionOfOne> cases;
  for (const auto& entry : bundled_corpus()) cases.push_back(entry.expansion);
  oracle::ExpansionGenerator gen(41, 2);
  for (int i = 0; i < 8; ++i) cases.push_back(gen.next());

  for (const auto& e : cases) {
    CAPTURE(format_expansion(e));
    const oracle::FullOracle full(e, depth_for(e));
    for (std::size_t n = 1; n <= max_n_for(e); ++n) {
      for (const auto& w : oracle::words(e, n)) {
        CAPTURE(format_digits(w, e.alphabet_max()));
        const bool expected = full.full(w);
        CHECK(is_full(w, e) == expected);
        CHECK(is_full_by_tail(w, e) == expected);
        CHECK(assume_admissible::is_full(w, e) == expected);
      }
    }
  }
}

TEST_CASE("tail_prefix_length") {
  const auto finite = ExpansionOfOne::finite({1, 0, 0, 1});
  // s stops at M - 1 for finite expansions.
  CHECK(tail_prefix_length(Word{0, 1, 0, 0}, finite) == 3);
  CHECK(tail_prefix_length(Word{0, 0, 1, 0}, finite) == 2);
  CHECK(tail_prefix_length(Word{0, 0, 0}, finite) == 0);
  const auto periodic = ExpansionOfOne::periodic({1, 0, 0}, {1, 0, 0, 0});
  CHECK(tail_prefix_length(Word{1, 0, 0, 1}, periodic) == 4);
  CHECK(tail_prefix_length(Word{0, 1, 0, 0, 1}, periodic) == 4);
  CHECK_THROWS_AS(tail_prefix_length(Word{1, 1}, finite), Error);
}

TEST_CASE("golden cylinders against exact arithmetic in Z[phi]") {
  const auto golden = ExpansionOfOne::finite({1, 1});
  for (unsigned n = 1; n <= 12; ++n) {
    const CylinderCalculator calc(golden, n);
    const auto all = enumerate(golden, n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto c = calc.cylinder(all[i]);
      CHECK(meets(c.left, golden_pi(all[i])));
      if (i + 1 < all.size()) {
        CHECK(meets(c.right, golden_pi(all[i + 1])));
      } else {
        CHECK(c.right.lo == 1.0);
        CHECK(c.right.hi == 1.0);
      }
      // Full cylinders have length φ^{-n}, the others φ^{-(n+1)}.
      const bool full = is_full(all[i], golden);
      CHECK(meets(c.length, inverse_power(full ? n : n + 1)));
      CHECK(calc.classify(all[i], 1e-12) == (full ? LengthVerdict::Full : LengthVerdict::NotFull));
    }
    CHECK(calc.cylinder(all.front()).left.lo == 0.0);
  }
}

TEST_CASE("length criterion on the corpus") {
  for (const auto& entry : bundled_corpus()) {
    const auto& e = entry.expansion;
    CAPTURE(entry.case_id);
    for (std::size_t n = 1; n <= 8; ++n) {
      const CylinderCalculator calc(e, n);
      for (const auto& w : enumerate(e, n)) {
        const auto v = calc.classify(w, 1e-12);
        CHECK(v == (is_full(w, e) ? LengthVerdict::Full : LengthVerdict::NotFull));
      }
    }
  }
  const auto golden = ExpansionOfOne::finite({1, 1});
  CHECK(is_full_by_length(Word{1, 0}, golden, 1e-12) == LengthVerdict::Full);
  CHECK(is_full_by_length(Word{0, 1}, golden, 1e-12) == LengthVerdict::NotFull);
  const auto c = cylinder(Word{1, 0}, golden);
  CHECK(c.length.lo <= 0.381966011250105 + 1e-15);
  CHECK(c.length.hi >= 0.381966011250105 - 1e-15);
}

TEST_CASE("a loose beta bracket leaves full words undecided") {
  // With a wide β bracket the length of a full cylinder cannot be pinned
  // to β^{-n}; the verdict says so instead of guessing.
  const auto golden = ExpansionOfOne::finite({1, 1});
  const CylinderCalculator loose(golden, 4, solve_beta(golden, parse_rational("1e-3")));
  CHECK(loose.classify(Word{0, 0, 0, 0}, 1e-12) == LengthVerdict::Undecided);
  CHECK(loose.classify(Word{0, 0, 0, 1}, 1e-12) == LengthVerdict::NotFull);
}
