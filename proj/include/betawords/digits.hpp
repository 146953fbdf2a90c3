#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "betawords/error.hpp"

namespace betawords {

using Digit = std::uint8_t;
inline constexpr unsigned kMaxDigit = 255;

enum class LexOrder { Less, Equal, Greater };

/// Infinite digit sequence `preperiod · period^∞`, indexed from 0.
/// Sequences with finite support carry the period {0}.
class EventuallyPeriodic {
 public:
  EventuallyPeriodic(std::vector<Digit> preperiod, std::vector<Digit> period);

  /// digits · 0^∞
  static EventuallyPeriodic finite(std::vector<Digit> digits);

  Digit operator[](std::size_t i) const noexcept {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
  }

  std::size_t preperiod_length() const noexcept { return preperiod_.size(); }
  std::size_t period_length() const noexcept { return period_.size(); }
  const std::vector<Digit>& preperiod() const noexcept { return preperiod_; }
  const std::vector<Digit>& period() const noexcept { return period_; }

  bool eventually_zero() const noexcept;
  std::vector<Digit> prefix(std::size_t n) const;

  /// σ^k
  EventuallyPeriodic shifted(std::size_t k) const;

  /// Same sequence with the shortest period and preperiod.
  EventuallyPeriodic canonical() const;

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;

 private:
  std::vector<Digit> preperiod_;
  std::vector<Digit> period_;
};

/// `w · 0^∞` seen through a span; lets admissibility tests compare suffixes
/// of a word without copying them.
struct FiniteSupportView {
  std::span<const Digit> digits;

  Digit operator[](std::size_t i) const noexcept { return i < digits.size() ? digits[i] : Digit{0}; }
  std::size_t preperiod_length() const noexcept { return digits.size(); }
  std::size_t period_length() const noexcept { return 1; }
};

template <class S>
concept DigitSequence = requires(const S& s, std::size_t i) {
  { s[i] } -> std::convertible_to<Digit>;
  { s.preperiod_length() } -> std::convertible_to<std::size_t>;
  { s.period_length() } -> std::convertible_to<std::size_t>;
};

/// Two eventually periodic sequences that agree on the first
/// max(preperiods) + lcm(periods) terms agree everywhere.
template <DigitSequence A, DigitSequence B>
std::size_t lex_decision_bound(const A& a, const B& b) {
  return std::max(a.preperiod_length(), b.preperiod_length()) +
         std::lcm(a.period_length(), b.period_length());
}

template <DigitSequence A, DigitSequence B>
LexOrder decide_lex_order(const A& a, const B& b) {
  const std::size_t bound = lex_decision_bound(a, b);
  for (std::size_t i = 0; i < bound; ++i) {
    const Digit x = a[i];
    const Digit y = b[i];
    if (x < y) return LexOrder::Less;
    if (x > y) return LexOrder::Greater;
  }
  return LexOrder::Equal;
}

/// ε*(1,β): always infinite, eventually periodic.
struct ModifiedExpansion {
  EventuallyPeriodic digits;
};

/// A validated β-expansion of 1. Immutable.
class ExpansionOfOne {
 public:
  /// Validates the Parry self-dominance condition σ^k(w) ≺ w for all k ≥ 1.
  /// Throws Error{NotSelfDominant} with the least violating shift, or
  /// Error{InvalidInput} for empty, all-zero, leading-zero or β = 1 input.
  static ExpansionOfOne validate(const EventuallyPeriodic& candidate);

  static ExpansionOfOne finite(std::vector<Digit> digits) {
    return validate(EventuallyPeriodic::finite(std::move(digits)));
  }
  static ExpansionOfOne periodic(std::vector<Digit> preperiod, std::vector<Digit> period) {
    return validate(EventuallyPeriodic(std::move(preperiod), std::move(period)));
  }

  const EventuallyPeriodic& sequence() const noexcept { return sequence_; }
  const ModifiedExpansion& modified() const noexcept { return modified_; }

  bool is_finite() const noexcept { return finite_; }
  /// M when finite, 0 otherwise.
  std::size_t length() const noexcept { return length_; }
  /// ⌊β⌋ = ε_1
  Digit alphabet_max() const noexcept { return sequence_[0]; }
  bool is_integer_beta() const noexcept { return finite_ && length_ == 1; }

  /// ε_pos, 1-based.
  Digit digit(std::size_t pos) const noexcept {
    return pos <= kCached ? eps_[pos - 1] : sequence_[pos - 1];
  }
  /// ε*_pos, 1-based.
  Digit star(std::size_t pos) const noexcept {
    return pos <= kCached ? star_[pos - 1] : modified_.digits[pos - 1];
  }

 private:
  static constexpr std::size_t kCached = 256;

  ExpansionOfOne(EventuallyPeriodic sequence, bool finite, std::size_t length);

  EventuallyPeriodic sequence_;
  ModifiedExpansion modified_;
  bool finite_;
  std::size_t length_;
  std::vector<Digit> eps_;
  std::vector<Digit> star_;
};

ModifiedExpansion modified_expansion(const ExpansionOfOne& e);

/// Ascending 1-based positions of nonzero digits of ε(1,β) up to `upto`.
std::vector<std::size_t> nonzero_sequence(const ExpansionOfOne& e, std::size_t upto);

/// n_2, the second nonzero position. Exists whenever β ∉ ℕ.
std::size_t second_nonzero_position(const ExpansionOfOne& e);

/// r_n(β): longest block of zeros in ε*_1 … ε*_n (0 when there is none).
std::size_t max_zero_run(const ExpansionOfOne& e, std::size_t n);

// Text and JSON forms.
//   "3,0,2,0,0,0,0,1"  finite
//   "1,0,0;1,0,0,0"    preperiod ; period
//   {"finite":[...]} / {"preperiod":[...],"period":[...]}

EventuallyPeriodic parse_sequence(std::string_view text);
std::string format_sequence(const EventuallyPeriodic& seq);
std::string format_expansion(const ExpansionOfOne& e);

EventuallyPeriodic sequence_from_json(std::string_view json);
std::string expansion_to_json(const ExpansionOfOne& e);

/// Digit string: bare when every digit is ≤ 9, comma-separated otherwise.
std::string format_digits(std::span<const Digit> digits, Digit alphabet_max);
std::vector<Digit> parse_digits(std::string_view text);

}  // namespace betawords
