#include "betawords/words.hpp"

#include <string>

namespace betawords {

namespace {

// Match automaton against ε*: state j means the current comparison agrees
// with ε*_1 … ε*_j. Reading d against c = ε*_{j+1}: d < c → 0, d = c → j+1,
// d > c → reject.
constexpr std::size_t kReject = static_cast<std::size_t>(-1);

std::size_t step(const ExpansionOfOne& e, std::size_t state, Digit d) {
  const Digit c = e.star(state + 1);
  if (d < c) return 0;
  if (d == c) return state + 1;
  return kReject;
}

void check_alphabet(std::span<const Digit> w, const ExpansionOfOne& e) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > e.alphabet_max()) {
      throw Error(ErrorCode::AlphabetMismatch,
                  "digit " + std::to_string(w[i]) + " exceeds the alphabet bound " +
                      std::to_string(e.alphabet_max()),
                  i + 1);
    }
  }
}

// table[len][j]: admissible continuations of length len from state j.
std::vector<std::vector<std::uint64_t>> continuation_table(const ExpansionOfOne& e, std::size_t n) {
  std::vector<std::vector<std::uint64_t>> table(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t j = 0; j <= n; ++j) table[0][j] = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t j = 0; j + len <= n; ++j) {
      std::uint64_t below = 0;
      std::uint64_t total = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(e.star(j + 1)), table[len - 1][0], &below) ||
          __builtin_add_overflow(below, table[len - 1][j + 1], &total)) {
        throw Error(ErrorCode::InvalidInput, "word count exceeds 64 bits at length " + std::to_string(n));
      }
      table[len][j] = total;
    }
  }
  return table;
}

}  // namespace

bool is_admissible(std::span<const Digit> w, const ExpansionOfOne& e) {
  check_alphabet(w, e);
  const auto& star = e.modified().digits;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (decide_lex_order(FiniteSupportView{w.subspan(k)}, star) != LexOrder::Less) return false;
  }
  return true;
}

std::optional<std::size_t> first_rejection(std::span<const Digit> w, const ExpansionOfOne& e) noexcept {
  std::size_t state = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    state = step(e, state, w[i]);
    if (state == kReject) return i + 1;
  }
  return std::nullopt;
}

void require_admissible(std::span<const Digit> w, const ExpansionOfOne& e) {
  check_alphabet(w, e);
  if (const auto pos = first_rejection(w, e)) {
    throw Error(ErrorCode::NotAdmissible, "word is not admissible at position " + std::to_string(*pos), *pos);
  }
}

Word max_word(const ExpansionOfOne& e, std::size_t n) { return e.modified().digits.prefix(n); }

std::optional<Word> successor(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  std::vector<std::size_t> states(w.size());
  std::size_t state = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    states[i] = state;
    state = step(e, state, w[i]);
  }
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] < e.star(states[i] + 1)) {
      Word out(w.begin(), w.end());
      ++out[i];
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(i) + 1, out.end(), Digit{0});
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Word> predecessor(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  const std::size_t n = w.size();
  if (n == 0) return std::nullopt;
  Word out(w.begin(), w.end());
  if (out[n - 1] > 0) {
    --out[n - 1];
    return out;
  }
  std::size_t k = n - 1;
  while (k > 0 && out[k - 1] == 0) --k;
  if (k == 0) return std::nullopt;
  --out[k - 1];
  for (std::size_t i = k; i < n; ++i) out[i] = e.star(i - k + 1);
  return out;
}

std::uint64_t count(const ExpansionOfOne& e, std::size_t n) { return continuation_table(e, n)[n][0]; }

std::uint64_t rank(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  const std::size_t n = w.size();
  const auto table = continuation_table(e, n);
  std::uint64_t r = 0;
  std::size_t state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    r += static_cast<std::uint64_t>(w[i]) * table[n - i - 1][0];
    state = step(e, state, w[i]);
  }
  return r;
}

Word unrank(const ExpansionOfOne& e, std::size_t n, std::uint64_t index) {
  const auto table = continuation_table(e, n);
  if (index >= table[n][0]) {
    throw Error(ErrorCode::InvalidInput, "index " + std::to_string(index) + " is outside the words of length " + std::to_string(n));
  }
  Word out(n);
  std::size_t state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rest = n - i - 1;
    const Digit c = e.star(state + 1);
    const std::uint64_t below = table[rest][0];
    if (index < static_cast<std::uint64_t>(c) * below) {
      out[i] = static_cast<Digit>(index / below);
      index %= below;
      state = 0;
    } else {
      out[i] = c;
      index -= static_cast<std::uint64_t>(c) * below;
      ++state;
    }
  }
  return out;
}

WordEnumerator::WordEnumerator(const ExpansionOfOne& e, std::size_t n) : WordEnumerator(e, n, 0, count(e, n)) {}

WordEnumerator::WordEnumerator(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end)
    : e_(&e), n_(n), index_(begin), end_(end), states_(n + 1, 0) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "word length must be at least 1");
  if (begin > end) throw Error(ErrorCode::InvalidInput, "enumeration range has begin > end");
  if (begin < end) {
    word_ = unrank(e, n, begin);
    refresh_states(0);
  }
}

WordEnumerator::WordEnumerator(const ExpansionOfOne& e, std::size_t n, std::span<const Digit> from,
                               std::optional<std::span<const Digit>> to)
    : WordEnumerator(e, n, rank(from, e), to ? rank(*to, e) : count(e, n)) {
  if (from.size() != n || (to && to->size() != n)) {
    throw Error(ErrorCode::InvalidInput, "range endpoints must have length n");
  }
}

void WordEnumerator::refresh_states(std::size_t from) {
  for (std::size_t i = from; i < n_; ++i) states_[i + 1] = step(*e_, states_[i], word_[i]);
}

bool WordEnumerator::next() {
  if (index_ >= end_) return false;
  if (!started_) {
    started_ = true;
    ++index_;
    return true;
  }
  for (std::size_t i = n_; i-- > 0;) {
    if (word_[i] < e_->star(states_[i] + 1)) {
      ++word_[i];
      std::fill(word_.begin() + static_cast<std::ptrdiff_t>(i) + 1, word_.end(), Digit{0});
      refresh_states(i);
      ++index_;
      return true;
    }
  }
  // Unreachable for consistent ranges: index_ < end_ ≤ count.
  index_ = end_;
  return false;
}

std::vector<Word> enumerate(const ExpansionOfOne& e, std::size_t n) {
  std::vector<Word> out;
  WordEnumerator it(e, n);
  while (it.next()) out.push_back(it.current());
  return out;
}

}  // namespace betawords
