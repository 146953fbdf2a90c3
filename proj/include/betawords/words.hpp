#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "betawords/digits.hpp"

namespace betawords {

/// A finite digit string w_1 … w_n, stored 0-based.
using Word = std::vector<Digit>;

/// σ^k(w 0^∞) ≺ ε* for every 0 ≤ k < n.
/// Throws AlphabetMismatch when a digit exceeds ε_1.
bool is_admissible(std::span<const Digit> w, const ExpansionOfOne& e);

/// 1-based position where the admissibility automaton rejects w, or empty
/// when w is admissible. Assumes digits within the alphabet.
std::optional<std::size_t> first_rejection(std::span<const Digit> w, const ExpansionOfOne& e) noexcept;

/// Throws NotAdmissible (with the 1-based position where the automaton
/// rejects) unless w is admissible.
void require_admissible(std::span<const Digit> w, const ExpansionOfOne& e);

/// ε*|_n, the lexicographically largest word of Σ_β^n.
Word max_word(const ExpansionOfOne& e, std::size_t n);

std::optional<Word> successor(std::span<const Digit> w, const ExpansionOfOne& e);
std::optional<Word> predecessor(std::span<const Digit> w, const ExpansionOfOne& e);

/// Number of admissible words of length n. Throws InvalidInput when the
/// value does not fit in 64 bits.
std::uint64_t count(const ExpansionOfOne& e, std::size_t n);

/// Lex position of w in Σ_β^n (0-based), and its inverse.
std::uint64_t rank(std::span<const Digit> w, const ExpansionOfOne& e);
Word unrank(const ExpansionOfOne& e, std::size_t n, std::uint64_t index);

/// Single-consumer stream over the half-open lex range [begin, end) of Σ_β^n.
///
///   WordEnumerator it(e, n);
///   while (it.next()) use(it.current());
class WordEnumerator {
 public:
  WordEnumerator(const ExpansionOfOne& e, std::size_t n);
  WordEnumerator(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end);
  /// Range between two words; `to` excluded, nullopt meaning the end.
  WordEnumerator(const ExpansionOfOne& e, std::size_t n, std::span<const Digit> from,
                 std::optional<std::span<const Digit>> to);

  /// Advances; false once the range is exhausted.
  bool next();
  const Word& current() const noexcept { return word_; }
  /// Lex index of current().
  std::uint64_t index() const noexcept { return index_ - 1; }
  std::uint64_t end_index() const noexcept { return end_; }

 private:
  void refresh_states(std::size_t from);

  const ExpansionOfOne* e_;
  std::size_t n_;
  std::uint64_t index_;
  std::uint64_t end_;
  Word word_;
  // states_[i] = automaton state before reading word_[i].
  std::vector<std::size_t> states_;
  bool started_ = false;
};

/// Materialized Σ_β^n, for tests and small n.
std::vector<Word> enumerate(const ExpansionOfOne& e, std::size_t n);

}  // namespace betawords
