#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "betawords/digits.hpp"

namespace betawords {

struct CorpusEntry {
  std::string case_id;
  ExpansionOfOne expansion;
};

/// One entry per non-blank line: `SEQ` or `CASE_ID SEQ`; `#` starts a comment.
/// Throws InvalidInput (with the 1-based line) or the validation error of a
/// bad sequence.
std::vector<CorpusEntry> parse_corpus(std::string_view text);

/// Text of the built-in corpus.
std::string_view bundled_corpus_text();
std::vector<CorpusEntry> bundled_corpus();

struct VerifyOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 12;
  unsigned shards = 1;
  /// Per-word numeric criterion up to this n.
  std::size_t numeric_max_n = 12;
  double numeric_tol = 1e-12;
  /// Cylinder partition sum up to this n.
  std::size_t partition_max_n = 10;
  /// Suffix closure, decomposition and tail-run walks up to this n.
  std::size_t word_property_max_n = 12;
  /// Last-digit lowering checks up to this n.
  std::size_t lowering_max_n = 10;
  /// Concatenation closure over |u|, |v| up to this length.
  std::size_t concat_max = 6;
  /// Truncation checks on ε and ε* up to this length.
  std::size_t truncation_max = 24;
  /// Failures kept per (case, n); the count is always exact.
  std::size_t max_failures = 10;
  /// Harness self-test: report a wrong F formula.
  bool corrupt_formula = false;
};

struct CaseReport {
  std::string case_id;
  std::size_t n = 0;
  int F_case = 0;
  int N_case = 0;
  std::vector<std::size_t> F_formula, F_enum, N_formula, N_enum;
  bool match = false;
  std::uint64_t words = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;
  bool pass() const { return match && failure_count == 0; }
};

struct ExpansionReport {
  std::string case_id;
  std::string expansion;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::vector<ExpansionReport> expansions;
  std::vector<CaseReport> cases;
  bool pass() const;
  /// Deterministic JSON; independent of the shard count.
  std::string to_json() const;
};

/// Throws IntegerBeta if any corpus entry has integer β.
VerifyReport verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options);

CaseReport verify_case(const CorpusEntry& entry, std::size_t n, const VerifyOptions& options);
ExpansionReport verify_expansion(const CorpusEntry& entry, const VerifyOptions& options);

}  // namespace betawords
