#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "betawords/digits.hpp"

namespace betawords {

using Rational = mpq_class;

/// Exact parse of "3", "-2.5", "1e-12", "1.618033988749", "5/2".
Rational parse_rational(std::string_view text);
/// Always "p/q", including q = 1.
std::string format_rational(const Rational& value);

enum class Rounding { Down, Up };
/// Decimal string with `fraction_digits` digits after the point, rounded
/// in the given direction (so that enclosures stay enclosures when printed).
std::string format_decimal(const Rational& value, int fraction_digits, Rounding rounding);

/// Certified bracket lo ≤ β ≤ hi with exact rational ends; lo = hi for
/// exactly known β.
struct BetaInterval {
  Rational lo;
  Rational hi;

  static BetaInterval exact(const Rational& beta) { return make(beta, beta); }
  /// Throws InvalidInput unless 1 < lo ≤ hi.
  static BetaInterval make(const Rational& lo, const Rational& hi);

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Σ d_i β^{-i} over the whole infinite sequence, summing the periodic
/// tail in closed form.
Rational series_value(const EventuallyPeriodic& seq, const Rational& beta);

/// Bisection of Σ ε_n β^{-n} = 1 on [ε_1, ε_1 + 1]. The result has
/// width ≤ tol and a certified sign change (or is a single exact root).
BetaInterval solve_beta(const ExpansionOfOne& e, const Rational& tol);

/// Bits of precision: tol = 2^-bits.
BetaInterval solve_beta_bits(const ExpansionOfOne& e, unsigned bits);

inline constexpr unsigned kDefaultMaxPrecisionBits = 1024;
/// BETA_WORDS_MAX_PRECISION (bits) when set and valid, else the default.
unsigned max_precision_from_env();

/// Supplies a tighter bracket of the same β on demand (width ≤ 2^-bits).
using BetaRefiner = std::function<BetaInterval(unsigned bits)>;

BetaRefiner refiner_for(const ExpansionOfOne& e);

struct DigitExtraction {
  std::vector<Digit> digits;
  /// The orbit of 1 reached 0: ε(1,β) is finite and `digits` ends with its
  /// zero tail.
  bool finite = false;
  /// Finiteness came from snapping an undecidable floor to the simple Parry
  /// number inside the bracket (see expansion_digits_from_beta).
  bool snapped = false;
  unsigned precision_bits = 0;

  /// The exact expansion when `finite`.
  std::optional<ExpansionOfOne> expansion() const;
};

/// First n digits of ε(1,β) via x ← βx − ⌊βx⌋ from T_β(1) = β − ⌊β⌋ in exact
/// rational interval arithmetic. A floor is accepted only when both ends of
/// the enclosure of βx share it.
///
/// When a floor is ambiguous the bracket is refined through `refine`
/// (doubling bits up to `max_precision_bits`). If it is still ambiguous,
/// the enclosure of βx straddles an integer j, and the bracket contains the
/// root of the finite candidate ε_1…ε_{k-1} j, the candidate is returned
/// (`snapped`). Otherwise throws Error{PrecisionExhausted, position}.
DigitExtraction expansion_digits_from_beta(const BetaInterval& beta, std::size_t n,
                                           unsigned max_precision_bits = kDefaultMaxPrecisionBits,
                                           const BetaRefiner& refine = {});

/// Closed interval of doubles; every operation rounds outward by one ulp,
/// so the true real result always lies inside.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  static Enclosure point(double x) { return {x, x}; }
  static Enclosure of(const Rational& q);
  static Enclosure of(const BetaInterval& beta);

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(long c, const Enclosure& a);
/// Requires b strictly positive.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

/// "[lo,hi]" with `digits` decimals after the point, lo rounded down and hi up;
/// a degenerate enclosure prints as the exact rational "p/q".
std::string format_enclosure(const Enclosure& x, int digits);

}  // namespace betawords
