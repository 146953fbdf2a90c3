#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "betawords/digits.hpp"
#include "betawords/words.hpp"

namespace betawords {

using LengthSet = std::set<std::size_t>;

// τ_β(s): terms in the greedy representation of s by nonzero positions.
std::size_t tau(std::size_t s, const ExpansionOfOne& e);
/// τ(1) … τ(bound), index 0 holding τ(1).
std::vector<std::size_t> tau_table(const ExpansionOfOne& e, std::size_t bound);
/// τ(1) … τ(k) from the first k digits alone; τ(s) needs only ε_1 … ε_s.
std::vector<std::size_t> tau_table(std::span<const Digit> prefix);
/// max τ(s) over 1 ≤ s ≤ bound (0 for bound = 0).
std::size_t max_tau(const ExpansionOfOne& e, std::size_t bound);

enum class RunKind { Full, NonFull };

struct RunRecord {
  RunKind kind;
  std::uint64_t start_index;
  std::uint64_t length;
  Word first_word;
  Word last_word;
};

/// Maximal runs over a lex range of Σ_β^n, pulled one at a time. Over a
/// partial range the first and last records may be cut by the range ends.
class RunStream {
 public:
  RunStream(const ExpansionOfOne& e, std::size_t n);
  RunStream(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end);

  std::optional<RunRecord> next();

 private:
  const ExpansionOfOne* e_;
  WordEnumerator it_;
  bool has_pending_ = false;
  bool pending_full_ = false;
};

std::vector<RunRecord> maximal_runs(const ExpansionOfOne& e, std::size_t n);

/// Runs of one lex range, reduced to what is needed to stitch ranges
/// together: the (possibly cut) first and last runs in full, interior runs
/// as lengths only.
struct RunSummary {
  std::vector<RunRecord> edge;  // 0, 1 or 2 records
  LengthSet interior_full;
  LengthSet interior_nonfull;
  std::uint64_t words = 0;
  std::uint64_t runs = 0;

  void add(RunRecord r);
  /// Appends the summary of the range that immediately follows this one.
  void merge(RunSummary next);
};

RunSummary summarize_runs(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end);

/// Splits Σ_β^n into `shards` consecutive ranges, summarizes them on
/// separate threads and merges in order.
RunSummary summarize_runs_sharded(const ExpansionOfOne& e, std::size_t n, unsigned shards);

/// Half-open ranges of nearly equal size covering [0, count(e, n)).
std::vector<std::pair<std::uint64_t, std::uint64_t>> shard_ranges(std::uint64_t total, unsigned shards);

enum class Provenance { Enumerated, Formula };

struct RunSets {
  LengthSet F;
  LengthSet N;
  Provenance provenance;
};

RunSets run_sets_from(const RunSummary& s);
RunSets run_sets_enumerated(const ExpansionOfOne& e, std::size_t n, unsigned shards = 1);

/// Case numbers: F uses 1–3 in the order of the three-case formula, N uses
/// the rows 1–10 of the non-full table.
int F_formula_case(const ExpansionOfOne& e, std::size_t n);
int N_formula_case(const ExpansionOfOne& e, std::size_t n);

LengthSet F_set_formula(const ExpansionOfOne& e, std::size_t n);
LengthSet N_set_formula(const ExpansionOfOne& e, std::size_t n);
RunSets run_sets_formula(const ExpansionOfOne& e, std::size_t n);

std::size_t max_F(const ExpansionOfOne& e, std::size_t n);
std::size_t min_F(const ExpansionOfOne& e, std::size_t n);
std::size_t max_N(const ExpansionOfOne& e, std::size_t n);
std::size_t min_N(const ExpansionOfOne& e, std::size_t n);

struct TailRunPrediction {
  std::size_t s;
  std::size_t predicted;
  /// The walk agreed: `predicted` non-full words from w, then a full one.
  bool confirmed;
};

/// Uses the longest allowed s with w ending in ε_1 … ε_s. Throws TailMismatch
/// when there is none.
TailRunPrediction tail_run_prediction(std::span<const Digit> w, const ExpansionOfOne& e);
/// Same walk for a given s.
TailRunPrediction tail_run_prediction(std::span<const Digit> w, const ExpansionOfOne& e, std::size_t s);

struct SMaxClass {
  RunKind kind;
  /// ε_M for a full S_max; 0 when only the kind is predicted.
  std::size_t length;
};

SMaxClass s_max_classify(const ExpansionOfOne& e, std::size_t n);

/// Throws IntegerBeta for β ∈ ℕ.
void require_non_integer(const ExpansionOfOne& e);

}  // namespace betawords
