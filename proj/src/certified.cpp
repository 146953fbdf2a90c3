#include "betawords/certified.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

namespace betawords {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

Rational pow2_neg(unsigned bits) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  Rational out(1, den);
  out.canonicalize();
  return out;
}

mpz_class floor_of(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// Σ_{i=1..k} d_i r^i by Horner.
Rational poly_in(const std::vector<Digit>& digits, const Rational& r) {
  Rational acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = (acc + *it) * r;
  return acc;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty number");

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
    Rational out = num / den;
    out.canonicalize();
    return out;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string mantissa;
  long fraction_digits = 0;
  bool seen_point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_point) throw Error(ErrorCode::InvalidInput, "malformed number '" + s + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa += s[i];
      if (seen_point) ++fraction_digits;
    } else {
      throw Error(ErrorCode::InvalidInput, "malformed number '" + s + "'");
    }
  }
  if (mantissa.empty()) throw Error(ErrorCode::InvalidInput, "malformed number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    const std::string exp_text = s.substr(i + 1);
    char* end = nullptr;
    exponent = std::strtol(exp_text.c_str(), &end, 10);
    if (exp_text.empty() || *end != '\0' || std::labs(exponent) > 100000) {
      throw Error(ErrorCode::InvalidInput, "malformed exponent in '" + s + "'");
    }
  }
  Rational out{mpz_class(mantissa)};
  const long shift = exponent - fraction_digits;
  if (shift >= 0) {
    out *= pow10(static_cast<unsigned long>(shift));
  } else {
    out /= pow10(static_cast<unsigned long>(-shift));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_decimal(const Rational& value, int fraction_digits, Rounding rounding) {
  fraction_digits = std::max(fraction_digits, 0);
  const Rational scaled = value * pow10(static_cast<unsigned long>(fraction_digits));
  mpz_class z = rounding == Rounding::Down ? floor_of(scaled) : ceil_of(scaled);
  const bool negative = z < 0;
  if (negative) z = -z;
  std::string digits = z.get_str();
  if (fraction_digits > 0) {
    if (digits.size() <= static_cast<std::size_t>(fraction_digits)) {
      digits.insert(0, static_cast<std::size_t>(fraction_digits) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(fraction_digits), 1, '.');
  }
  return negative ? "-" + digits : digits;
}

BetaInterval BetaInterval::make(const Rational& lo, const Rational& hi) {
  if (!(lo > 1)) throw Error(ErrorCode::InvalidInput, "beta bracket must lie above 1");
  if (hi < lo) throw Error(ErrorCode::InvalidInput, "beta bracket has lo > hi");
  return BetaInterval{lo, hi};
}

Rational series_value(const EventuallyPeriodic& seq, const Rational& beta) {
  if (!(beta > 1) && !seq.eventually_zero()) throw Error(ErrorCode::InvalidInput, "periodic series needs beta > 1");
  const Rational r = 1 / beta;
  Rational value = poly_in(seq.preperiod(), r);
  if (!seq.eventually_zero()) {
    Rational r_pre = 1;
    for (std::size_t i = 0; i < seq.preperiod_length(); ++i) r_pre *= r;
    Rational r_period = 1;
    for (std::size_t i = 0; i < seq.period_length(); ++i) r_period *= r;
    value += r_pre * poly_in(seq.period(), r) / (1 - r_period);
  }
  return value;
}

BetaInterval solve_beta(const ExpansionOfOne& e, const Rational& tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
  const auto f = [&](const Rational& beta) -> Rational { return series_value(e.sequence(), beta) - 1; };
  Rational lo = e.alphabet_max();
  Rational hi = lo + 1;
  // f decreases in β; f(ε_1) ≥ 0 > f(ε_1 + 1) for every valid expansion.
  // A periodic tail diverges at β = 1.
  if ((lo > 1 || e.sequence().eventually_zero()) && f(lo) == 0) return BetaInterval{lo, lo};
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    const Rational v = f(mid);
    if (v == 0) return BetaInterval{mid, mid};
    (v > 0 ? lo : hi) = mid;
  }
  return BetaInterval{lo, hi};
}

BetaInterval solve_beta_bits(const ExpansionOfOne& e, unsigned bits) {
  return solve_beta(e, pow2_neg(bits));
}

unsigned max_precision_from_env() {
  if (const char* raw = std::getenv("BETA_WORDS_MAX_PRECISION")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (end != raw && *end == '\0' && v >= 16 && v <= (1u << 20)) return static_cast<unsigned>(v);
  }
  return kDefaultMaxPrecisionBits;
}

BetaRefiner refiner_for(const ExpansionOfOne& e) {
  return [e](unsigned bits) { return solve_beta_bits(e, bits); };
}

std::optional<ExpansionOfOne> DigitExtraction::expansion() const {
  if (!finite) return std::nullopt;
  std::vector<Digit> head = digits;
  while (!head.empty() && head.back() == 0) head.pop_back();
  return ExpansionOfOne::finite(std::move(head));
}

namespace {

struct Ambiguity {
  std::size_t position;  // 1-based
  mpz_class integer;     // integer inside the enclosure of βx
  bool single;           // the enclosure straddles only that integer
};

// Attempts n digits with a fixed bracket; returns the ambiguity on failure.
std::optional<Ambiguity> extract_fixed(const BetaInterval& beta, std::size_t n, DigitExtraction& out) {
  out.digits.clear();
  out.finite = false;
  Rational x_lo = 1;
  Rational x_hi = 1;
  for (std::size_t pos = 1; pos <= n; ++pos) {
    if (x_lo == 0 && x_hi == 0) {
      out.digits.push_back(0);
      out.finite = true;
      continue;
    }
    Rational y_lo = beta.lo * x_lo;
    Rational y_hi = beta.hi * x_hi;
    const mpz_class d_lo = floor_of(y_lo);
    const mpz_class d_hi = floor_of(y_hi);
    if (d_lo != d_hi) return Ambiguity{pos, d_hi, d_hi - d_lo == 1};
    if (d_lo > kMaxDigit) throw Error(ErrorCode::InvalidInput, "digit exceeds 255");
    out.digits.push_back(static_cast<Digit>(d_lo.get_ui()));
    x_lo = y_lo - d_lo;
    x_hi = y_hi - d_lo;
    x_lo.canonicalize();
    x_hi.canonicalize();
  }
  if (x_lo == 0 && x_hi == 0) out.finite = true;
  return std::nullopt;
}

// The simple Parry candidate ε_1 … ε_{k-1} j, if its β lies in the bracket.
std::optional<std::vector<Digit>> snap_candidate(const BetaInterval& beta, const DigitExtraction& partial,
                                                 const Ambiguity& amb) {
  if (!amb.single || amb.integer < 1 || amb.integer > kMaxDigit) return std::nullopt;
  std::vector<Digit> candidate(partial.digits.begin(),
                               partial.digits.begin() + static_cast<std::ptrdiff_t>(amb.position - 1));
  candidate.push_back(static_cast<Digit>(amb.integer.get_ui()));
  try {
    const ExpansionOfOne e = ExpansionOfOne::finite(candidate);
    const Rational f_lo = series_value(e.sequence(), beta.lo) - 1;
    const Rational f_hi = series_value(e.sequence(), beta.hi) - 1;
    if (f_lo >= 0 && f_hi <= 0) return candidate;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

DigitExtraction expansion_digits_from_beta(const BetaInterval& beta, std::size_t n,
                                           unsigned max_precision_bits, const BetaRefiner& refine) {
  BetaInterval current = BetaInterval::make(beta.lo, beta.hi);
  unsigned bits = 0;
  DigitExtraction out;
  while (true) {
    const auto amb = extract_fixed(current, n, out);
    if (!amb) {
      out.precision_bits = bits;
      return out;
    }
    if (refine && bits < max_precision_bits) {
      bits = std::min(max_precision_bits, bits == 0 ? 64u : bits * 2);
      current = refine(bits);
      continue;
    }
    if (auto candidate = snap_candidate(current, out, *amb)) {
      out.digits = std::move(*candidate);
      out.digits.resize(n, 0);
      out.finite = true;
      out.snapped = true;
      out.precision_bits = bits;
      return out;
    }
    throw Error(ErrorCode::PrecisionExhausted,
                "digit " + std::to_string(amb->position) + " is undecidable at the available precision",
                amb->position);
  }
}

Enclosure Enclosure::of(const Rational& q) {
  const double d = q.get_d();  // truncates toward zero
  return {down(d), up(d)};
}

Enclosure Enclosure::of(const BetaInterval& beta) { return {down(beta.lo.get_d()), up(beta.hi.get_d())}; }

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

Enclosure operator*(long c, const Enclosure& a) {
  if (c == 0) return {0.0, 0.0};
  const double x = static_cast<double>(c) * a.lo;
  const double y = static_cast<double>(c) * a.hi;
  return {down(std::min(x, y)), up(std::max(x, y))};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (!(b.lo > 0)) throw Error(ErrorCode::InvalidInput, "division by an enclosure that is not positive");
  const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

std::string format_enclosure(const Enclosure& x, int digits) {
  if (x.lo == x.hi) return format_rational(Rational(x.lo));
  return "[" + format_decimal(Rational(x.lo), digits, Rounding::Down) + "," +
         format_decimal(Rational(x.hi), digits, Rounding::Up) + "]";
}

}  // namespace betawords
