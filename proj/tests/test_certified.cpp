#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "betawords/certified.hpp"
#include "oracles.hpp"

using namespace betawords;

namespace {

Rational q(const char* text) { return parse_rational(text); }

// β^M − Σ ε_i β^{M-i}, a polynomial whose root is β for a finite expansion.
Rational parry_polynomial(const std::vector<Digit>& eps, const Rational& beta) {
  Rational acc = 1;
  for (auto d : eps) acc = acc * beta - d;
  return acc;
}

struct Reference {
  const char* seq;
  double beta;  // 50-digit evaluation, rounded
};

// Roots computed separately with 50-digit arithmetic.
constexpr Reference kReferences[] = {
    {"1,1", 1.6180339887498948482},
    {"3,0,2,0,0,0,0,1", 3.196084845751922870},
    {"1,0,1,0,0,0,1", 1.516784253063233},
    {"1,0,0;1,0,0,0", 1.438416566585231},
    {"1,1,1", 1.839286755214161},
    {"2,0,1;0,0,1", 2.222694105059882},
    {"1,0,0,1", 1.380277569097614},
};

}  // namespace

TEST_CASE("parse_rational and format") {
  CHECK(q("1e-12") == Rational(1, 1000000000000));
  CHECK(q("5/2") == Rational(5, 2));
  CHECK(q("-2.5") == Rational(-5, 2));
  CHECK(q("1.618033988749") == Rational(1618033988749, 1000000000000));
  CHECK(q("2.5E1") == 25);
  CHECK(q(" 3 ") == 3);
  CHECK(q("1.5/0.5") == 3);
  CHECK_THROWS_AS(q(""), Error);
  CHECK_THROWS_AS(q("1.2.3"), Error);
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK_THROWS_AS(q("abc"), Error);
  CHECK_THROWS_AS(q("1e"), Error);

  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(2)) == "2/1");
  CHECK(format_decimal(Rational(1, 3), 4, Rounding::Down) == "0.3333");
  CHECK(format_decimal(Rational(1, 3), 4, Rounding::Up) == "0.3334");
  CHECK(format_decimal(Rational(-1, 3), 2, Rounding::Down) == "-0.34");
  CHECK(format_decimal(Rational(5), 0, Rounding::Up) == "5");
}

TEST_CASE("series_value") {
  CHECK(series_value(EventuallyPeriodic::finite({1, 1}), Rational(3, 2)) == Rational(10, 9));
  // (10)^∞ at β = 2: Σ 4^{-k} · 2 = 2/3.
  CHECK(series_value(EventuallyPeriodic({}, {1, 0}), 2) == Rational(2, 3));
  CHECK(series_value(EventuallyPeriodic({1}, {1}), 2) == 1);
  CHECK_THROWS_AS(series_value(EventuallyPeriodic({}, {1}), 1), Error);
}

TEST_CASE("solve_beta brackets a sign change of the Parry polynomial") {
  const auto golden = ExpansionOfOne::finite({1, 1});
  const BetaInterval b = solve_beta(golden, q("1e-9"));
  CHECK(b.width() <= q("1e-9"));
  CHECK(b.lo * b.lo - b.lo - 1 <= 0);
  CHECK(b.hi * b.hi - b.hi - 1 >= 0);
  CHECK(b.lo.get_d() == doctest::Approx(1.6180339887498949).epsilon(1e-9));

  const auto three = ExpansionOfOne::finite({3});
  const BetaInterval t = solve_beta(three, q("1e-9"));
  CHECK(t.lo == 3);
  CHECK(t.hi == 3);

  const std::vector<Digit> wide_digits{3, 0, 2, 0, 0, 0, 0, 1};
  const auto wide = ExpansionOfOne::finite(wide_digits);
  const BetaInterval w = solve_beta(wide, q("1e-6"));
  CHECK(w.width() <= q("1e-6"));
  CHECK(parry_polynomial(wide_digits, w.lo) <= 0);
  CHECK(parry_polynomial(wide_digits, w.hi) >= 0);

  CHECK_THROWS_AS(solve_beta(golden, 0), Error);
}

TEST_CASE("solve_beta matches independent roots") {
  for (const auto& ref : kReferences) {
    CAPTURE(ref.seq);
    const auto e = ExpansionOfOne::validate(parse_sequence(ref.seq));
    const BetaInterval b = solve_beta_bits(e, 80);
    CHECK(b.lo.get_d() == doctest::Approx(ref.beta).epsilon(1e-14));
    CHECK(b.hi.get_d() == doctest::Approx(ref.beta).epsilon(1e-14));
    CHECK(series_value(e.sequence(), b.lo) >= 1);
    CHECK(series_value(e.sequence(), b.hi) <= 1);
  }
}

TEST_CASE("expansion_digits_from_beta") {
  SUBCASE("golden bracket snaps to 11") {
    const auto x = expansion_digits_from_beta(BetaInterval::make(q("1.61803"), q("1.61804")), 4);
    CHECK(x.digits == std::vector<Digit>{1, 1, 0, 0});
    CHECK(x.finite);
    CHECK(x.snapped);
  }
  SUBCASE("inexact golden") {
    const Rational mid = q("1.618033988749"), tol = q("1e-12");
    const auto x = expansion_digits_from_beta(BetaInterval::make(mid - tol, mid + tol), 6);
    CHECK(x.digits == std::vector<Digit>{1, 1, 0, 0, 0, 0});
    REQUIRE(x.expansion());
    CHECK(format_expansion(*x.expansion()) == "1,1");
  }
  SUBCASE("exact rational 5/2") {
    // 1 → 1/2 → 1/4 → 5/8 → 9/16 ...
    const auto x = expansion_digits_from_beta(BetaInterval::exact(Rational(5, 2)), 5);
    CHECK(x.digits == std::vector<Digit>{2, 1, 0, 1, 1});
    CHECK_FALSE(x.finite);
    CHECK_FALSE(x.snapped);
  }
  SUBCASE("integer") {
    const auto x = expansion_digits_from_beta(BetaInterval::exact(3), 3);
    CHECK(x.digits == std::vector<Digit>{3, 0, 0});
    CHECK(x.finite);
  }
  SUBCASE("bracket over several integers is undecidable") {
    try {
      expansion_digits_from_beta(BetaInterval::make(q("1.2"), q("3.5")), 3);
      FAIL("expected PrecisionExhausted");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::PrecisionExhausted);
      CHECK(err.position() == 1);
    }
  }
  SUBCASE("refinement resolves a loose bracket") {
    const auto e = ExpansionOfOne::finite({1, 0, 1, 0, 0, 0, 1});
    const auto x = expansion_digits_from_beta(solve_beta_bits(e, 8), 12, 1024, refiner_for(e));
    CHECK(x.digits == std::vector<Digit>{1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0});
    CHECK(x.precision_bits >= 64);
  }
  SUBCASE("refinement stops at the cap") {
    const auto e = ExpansionOfOne::periodic({1, 0, 0}, {1, 0, 0, 0});
    const auto x = expansion_digits_from_beta(solve_beta_bits(e, 8), 30, 64, refiner_for(e));
    CHECK(x.digits == e.sequence().prefix(30));
    CHECK(x.precision_bits == 64);
  }
  CHECK_THROWS_AS(BetaInterval::make(1, 2), Error);
  CHECK_THROWS_AS(BetaInterval::make(3, 2), Error);
}

TEST_CASE("round trip through solve_beta for n <= 30") {
  oracle::ExpansionGenerator gen(21);
  for (int i = 0; i < 60; ++i) {
    const auto e = gen.next();
    CAPTURE(format_expansion(e));
    const auto x = expansion_digits_from_beta(solve_beta_bits(e, 64), 30, 1024, refiner_for(e));
    CHECK(x.digits == e.sequence().prefix(30));
    CHECK(x.finite == e.is_finite());
  }
}

TEST_CASE("max precision from the environment") {
  ::unsetenv("BETA_WORDS_MAX_PRECISION");
  CHECK(max_precision_from_env() == kDefaultMaxPrecisionBits);
  ::setenv("BETA_WORDS_MAX_PRECISION", "256", 1);
  CHECK(max_precision_from_env() == 256);
  ::setenv("BETA_WORDS_MAX_PRECISION", "junk", 1);
  CHECK(max_precision_from_env() == kDefaultMaxPrecisionBits);
  ::setenv("BETA_WORDS_MAX_PRECISION", "4", 1);
  CHECK(max_precision_from_env() == kDefaultMaxPrecisionBits);
  ::unsetenv("BETA_WORDS_MAX_PRECISION");
}

TEST_CASE("Enclosure arithmetic contains the exact result") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 997);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    Rational pos = b;
    if (pos <= 0) pos = -pos + 1;
    pos.canonicalize();
    const auto A = Enclosure::of(a), B = Enclosure::of(b), P = Enclosure::of(pos);
    auto inside = [](const Enclosure& x, const Rational& r) { return Rational(x.lo) <= r && r <= Rational(x.hi); };
    CHECK(inside(A, a));
    CHECK(inside(A + B, a + b));
    CHECK(inside(A - B, a - b));
    CHECK(inside(A * B, a * b));
    CHECK(inside(7 * A, 7 * a));
    CHECK(inside(A / P, a / pos));
  }
  CHECK(format_enclosure(Enclosure::point(0.5), 5) == "1/2");
  CHECK(format_enclosure(Enclosure{0.25, 0.5}, 3) == "[0.250,0.500]");
}
