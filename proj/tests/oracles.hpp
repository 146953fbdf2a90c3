#pragma once

// Brute-force reference implementations. Nothing here calls into the
// automaton, the block form or the run formulas of the library; the only
// shared piece is reading digits of a validated expansion.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "betawords/digits.hpp"

namespace oracle {

using betawords::Digit;
using betawords::ExpansionOfOne;
using Word = std::vector<Digit>;

// ε_1 … ε_len.
inline Word eps(const ExpansionOfOne& e, std::size_t len) {
  Word out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = e.sequence()[i];
  return out;
}

// ε*_1 … ε*_len, rebuilt from ε.
inline Word eps_star(const ExpansionOfOne& e, std::size_t len) {
  const auto& seq = e.sequence();
  if (!seq.eventually_zero()) return eps(e, len);
  std::size_t m = seq.preperiod_length();
  while (seq[m - 1] == 0) --m;
  Word period(m);
  for (std::size_t i = 0; i < m; ++i) period[i] = seq[i];
  period[m - 1] -= 1;
  Word out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = period[i % m];
  return out;
}

inline std::size_t horizon(const ExpansionOfOne& e) {
  return 2 * (e.sequence().preperiod_length() + e.sequence().period_length()) + 4;
}

// σ^k(w 0^∞) ≺ ε* for all k, comparing long prefixes directly.
inline bool admissible(const Word& w, const ExpansionOfOne& e) {
  const std::size_t n = w.size();
  const Word star = eps_star(e, n + horizon(e));
  for (std::size_t k = 0; k < n; ++k) {
    bool less = false;
    for (std::size_t i = 0; i < star.size(); ++i) {
      const Digit a = k + i < n ? w[k + i] : 0;
      if (a < star[i]) {
        less = true;
        break;
      }
      if (a > star[i]) return false;
    }
    if (!less) return false;
  }
  return true;
}

// Every word over {0..ε_1} of length n, lex order, filtered.
inline std::vector<Word> words(const ExpansionOfOne& e, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  const Digit top = e.alphabet_max();
  while (true) {
    if (admissible(w, e)) out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == top) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

// Full means every admissible continuation keeps w admissible; checked for
// continuations up to `depth` digits.
class FullOracle {
 public:
  FullOracle(const ExpansionOfOne& e, std::size_t depth) : e_(&e) {
    for (std::size_t L = 1; L <= depth; ++L) continuations_.push_back(words(e, L));
  }

  bool full(const Word& w) const {
    for (const auto& layer : continuations_) {
      for (const auto& v : layer) {
        Word wv = w;
        wv.insert(wv.end(), v.begin(), v.end());
        if (!admissible(wv, *e_)) return false;
      }
    }
    return true;
  }

 private:
  const ExpansionOfOne* e_;
  std::vector<std::vector<Word>> continuations_;
};

inline std::vector<std::size_t> nonzero_positions(const ExpansionOfOne& e, std::size_t upto) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= upto; ++i) {
    if (e.sequence()[i - 1] != 0) out.push_back(i);
  }
  return out;
}

// Greedy: subtract the largest nonzero position that fits until 0.
inline std::size_t tau(std::size_t s, const ExpansionOfOne& e) {
  const auto pos = nonzero_positions(e, s);
  std::size_t terms = 0;
  while (s > 0) {
    std::size_t best = 0;
    for (auto p : pos) {
      if (p <= s) best = p;
    }
    s -= best;
    ++terms;
  }
  return terms;
}

inline std::size_t max_zero_run(const Word& digits) {
  std::size_t best = 0, run = 0;
  for (auto d : digits) {
    run = d == 0 ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

struct Runs {
  std::set<std::size_t> F, N;
  std::vector<std::pair<bool, std::size_t>> sequence;  // (full, length)
};

inline Runs runs_of(const std::vector<bool>& flags) {
  Runs out;
  std::size_t i = 0;
  while (i < flags.size()) {
    std::size_t j = i;
    while (j < flags.size() && flags[j] == flags[i]) ++j;
    (flags[i] ? out.F : out.N).insert(j - i);
    out.sequence.emplace_back(flags[i], j - i);
    i = j;
  }
  return out;
}

inline std::uint64_t fibonacci(unsigned k) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// Random candidates, kept only when they validate.
class ExpansionGenerator {
 public:
  explicit ExpansionGenerator(std::uint64_t seed, Digit max_first = 3) : rng_(seed), max_first_(max_first) {}

  ExpansionOfOne next() {
    while (true) {
      std::uniform_int_distribution<int> first(1, max_first_);
      const Digit top = static_cast<Digit>(first(rng_));
      std::uniform_int_distribution<int> digit(0, top);
      std::uniform_int_distribution<int> len(1, 7);
      const bool periodic = std::bernoulli_distribution(0.4)(rng_);
      Word pre{top};
      const int extra = len(rng_);
      for (int i = 1; i < extra; ++i) pre.push_back(static_cast<Digit>(digit(rng_) * digit(rng_) / std::max<int>(top, 1)));
      try {
        if (!periodic) {
          if (pre.back() == 0) pre.back() = 1;
          auto e = ExpansionOfOne::finite(pre);
          if (!e.is_integer_beta()) return e;
        } else {
          Word period;
          const int plen = len(rng_) % 4 + 1;
          for (int i = 0; i < plen; ++i) period.push_back(static_cast<Digit>(digit(rng_) * digit(rng_) / std::max<int>(top, 1)));
          if (std::all_of(period.begin(), period.end(), [](Digit d) { return d == 0; })) period.back() = 1;
          auto e = ExpansionOfOne::periodic(pre, period);
          if (!e.is_integer_beta()) return e;
        }
      } catch (const betawords::Error&) {
      }
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  Digit max_first_;
};

}  // namespace oracle
