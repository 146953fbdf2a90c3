#include "betawords/structure.hpp"

namespace betawords {

namespace {

// Visits the segments of the block form; returns false if w is not
// admissible (a digit exceeds ε at a matching position).
template <class F>
bool for_each_segment(std::span<const Digit> w, const ExpansionOfOne& e, F&& on_segment) {
  const std::size_t n = w.size();
  std::size_t start = 0;
  std::size_t k = 1;
  while (start + k <= n) {
    const Digit d = w[start + k - 1];
    const Digit eps = e.digit(k);
    if (d > eps) return false;
    const bool last = start + k == n;
    if (d < eps || last) {
      on_segment(Segment{k, d}, last);
      start += k;
      k = 1;
    } else {
      ++k;
    }
  }
  return true;
}

std::size_t tail_range(std::size_t n, const ExpansionOfOne& e) {
  return e.is_finite() ? std::min(e.length() - 1, n) : n;
}

bool ends_with_prefix(std::span<const Digit> w, const ExpansionOfOne& e, std::size_t s) {
  const std::size_t offset = w.size() - s;
  for (std::size_t i = 1; i <= s; ++i) {
    if (w[offset + i - 1] != e.digit(i)) return false;
  }
  return true;
}

}  // namespace

MismatchPosition mismatch(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  for (std::size_t k = 1; k <= w.size(); ++k) {
    if (w[k - 1] < e.digit(k)) return k;
  }
  return std::nullopt;
}

Decomposition decompose(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  if (w.empty()) throw Error(ErrorCode::InvalidInput, "cannot decompose the empty word");
  Decomposition out{{}, {0, 0}};
  for_each_segment(w, e, [&](Segment s, bool last) {
    if (last) {
      out.tail = s;
    } else {
      out.blocks.push_back(s);
    }
  });
  return out;
}

Word reconstruct(const Decomposition& d, const ExpansionOfOne& e) {
  Word out;
  auto emit = [&](const Segment& s) {
    for (std::size_t i = 1; i < s.length; ++i) out.push_back(e.digit(i));
    out.push_back(s.last_digit);
  };
  for (const auto& b : d.blocks) emit(b);
  emit(d.tail);
  return out;
}

bool is_full(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  return assume_admissible::is_full(w, e);
}

std::size_t tail_prefix_length(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  return assume_admissible::tail_prefix_length(w, e);
}

bool is_full_by_tail(std::span<const Digit> w, const ExpansionOfOne& e) { return tail_prefix_length(w, e) == 0; }

namespace assume_admissible {

bool is_full(std::span<const Digit> w, const ExpansionOfOne& e) noexcept {
  Segment tail{0, 0};
  for_each_segment(w, e, [&](Segment s, bool last) {
    if (last) tail = s;
  });
  return tail.last_digit < e.digit(tail.length);
}

std::size_t tail_prefix_length(std::span<const Digit> w, const ExpansionOfOne& e) noexcept {
  for (std::size_t s = tail_range(w.size(), e); s >= 1; --s) {
    if (ends_with_prefix(w, e, s)) return s;
  }
  return 0;
}

std::size_t block_count(std::span<const Digit> w, const ExpansionOfOne& e) noexcept {
  std::size_t blocks = 0;
  for_each_segment(w, e, [&](Segment, bool last) { blocks += last ? 0 : 1; });
  return blocks;
}

std::size_t tail_length(std::span<const Digit> w, const ExpansionOfOne& e) noexcept {
  std::size_t l = 0;
  for_each_segment(w, e, [&](Segment s, bool last) {
    if (last) l = s.length;
  });
  return l;
}

}  // namespace assume_admissible

CylinderCalculator::CylinderCalculator(const ExpansionOfOne& e, std::size_t n, const BetaInterval& beta)
    : e_(&e), n_(n), inv_pow_(n + 2) {
  const Enclosure b = Enclosure::of(beta);
  const Enclosure inv = Enclosure::point(1.0) / b;
  inv_pow_[0] = Enclosure::point(1.0);
  for (std::size_t i = 1; i < inv_pow_.size(); ++i) inv_pow_[i] = inv_pow_[i - 1] * inv;
}

CylinderCalculator::CylinderCalculator(const ExpansionOfOne& e, std::size_t n)
    : CylinderCalculator(e, n, solve_beta_bits(e, 96)) {}

Enclosure CylinderCalculator::pi(std::span<const Digit> w) const {
  Enclosure sum = Enclosure::point(0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0) sum = sum + static_cast<long>(w[i]) * inv_pow_[i + 1];
  }
  return sum;
}

CylinderInterval CylinderCalculator::cylinder(std::span<const Digit> w) const {
  const Enclosure left = pi(w);
  const auto next = successor(w, *e_);
  if (!next) {
    const Enclosure one = Enclosure::point(1.0);
    return {left, one, one - left};
  }
  // w and its successor share w_1 … w_{i-1}; succ_i = w_i + 1, then zeros.
  std::size_t i = 0;
  while ((*next)[i] == w[i]) ++i;
  Enclosure length = inv_pow_[i + 1];
  for (std::size_t j = i + 1; j < w.size(); ++j) {
    if (w[j] != 0) length = length - static_cast<long>(w[j]) * inv_pow_[j + 1];
  }
  return {left, pi(*next), length};
}

LengthVerdict CylinderCalculator::classify(std::span<const Digit> w, double tol) const {
  return verdict(cylinder(w), tol);
}

LengthVerdict CylinderCalculator::verdict(const CylinderInterval& c, double tol) const {
  const Enclosure d = c.length - inv_pow_[n_];
  if (d.hi < 0) return LengthVerdict::NotFull;
  if (d.lo >= -tol && d.hi <= tol) return LengthVerdict::Full;
  return LengthVerdict::Undecided;
}

CylinderInterval cylinder(std::span<const Digit> w, const ExpansionOfOne& e) {
  require_admissible(w, e);
  return CylinderCalculator(e, w.size()).cylinder(w);
}

LengthVerdict is_full_by_length(std::span<const Digit> w, const ExpansionOfOne& e, double tol) {
  require_admissible(w, e);
  return CylinderCalculator(e, w.size()).classify(w, tol);
}

}  // namespace betawords
