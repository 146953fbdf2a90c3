#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "betawords/certified.hpp"
#include "betawords/digits.hpp"
#include "betawords/words.hpp"

namespace betawords {

/// 𝔪(w): least k with w_k < ε_k. Empty when w agrees with ε(1,β) up to
/// its last digit (w = ε_1 … ε_{n-1} w_n with w_n ≤ ε_n).
using MismatchPosition = std::optional<std::size_t>;

MismatchPosition mismatch(std::span<const Digit> w, const ExpansionOfOne& e);

/// One segment ε_1 … ε_{length-1} last_digit of the block form.
struct Segment {
  std::size_t length;
  Digit last_digit;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// w = block_1 · … · block_p · tail with every block ending strictly below
/// ε_{k_j} and the tail ending at most ε_l.
struct Decomposition {
  std::vector<Segment> blocks;
  Segment tail;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

Decomposition decompose(std::span<const Digit> w, const ExpansionOfOne& e);
Word reconstruct(const Decomposition& d, const ExpansionOfOne& e);

/// Structural criterion: full iff the tail digit is below ε_l.
bool is_full(std::span<const Digit> w, const ExpansionOfOne& e);

/// Largest s in the allowed range (1..n, or 1..min(M-1, n) when finite) such
/// that w ends with ε_1 … ε_s; 0 when there is none.
std::size_t tail_prefix_length(std::span<const Digit> w, const ExpansionOfOne& e);

/// Tail criterion: full iff no allowed prefix of ε(1,β) ends w.
bool is_full_by_tail(std::span<const Digit> w, const ExpansionOfOne& e);

/// Versions without the admissibility check, for callers that enumerate
/// Σ_β^n themselves.
namespace assume_admissible {
bool is_full(std::span<const Digit> w, const ExpansionOfOne& e) noexcept;
std::size_t tail_prefix_length(std::span<const Digit> w, const ExpansionOfOne& e) noexcept;
std::size_t block_count(std::span<const Digit> w, const ExpansionOfOne& e) noexcept;
std::size_t tail_length(std::span<const Digit> w, const ExpansionOfOne& e) noexcept;
}  // namespace assume_admissible

/// [left, right) with `left` exactly 0 for 0^n and `right` exactly 1 for the
/// last word; `length` is computed from the digits where w and its
/// successor differ, not as right − left.
struct CylinderInterval {
  Enclosure left;
  Enclosure right;
  Enclosure length;
};

enum class LengthVerdict { Full, NotFull, Undecided };

/// Cylinders of one order n for one β. Precomputes β^{-i} once.
class CylinderCalculator {
 public:
  CylinderCalculator(const ExpansionOfOne& e, std::size_t n, const BetaInterval& beta);
  /// β bracket from solve_beta at 2^-96.
  CylinderCalculator(const ExpansionOfOne& e, std::size_t n);

  /// Requires w admissible of length n.
  CylinderInterval cylinder(std::span<const Digit> w) const;

  /// Compares |I(w)| with β^{-n}: NotFull when certified shorter, Full when
  /// the difference encloses 0 inside [-tol, tol], Undecided otherwise.
  LengthVerdict classify(std::span<const Digit> w, double tol) const;
  LengthVerdict verdict(const CylinderInterval& c, double tol) const;

  const Enclosure& inverse_power(std::size_t i) const { return inv_pow_[i]; }

 private:
  Enclosure pi(std::span<const Digit> w) const;

  const ExpansionOfOne* e_;
  std::size_t n_;
  std::vector<Enclosure> inv_pow_;
};

CylinderInterval cylinder(std::span<const Digit> w, const ExpansionOfOne& e);
LengthVerdict is_full_by_length(std::span<const Digit> w, const ExpansionOfOne& e, double tol);

}  // namespace betawords
