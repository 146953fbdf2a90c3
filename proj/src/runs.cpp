#include "betawords/runs.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "betawords/structure.hpp"

namespace betawords {

namespace {

std::size_t greedy_terms(std::size_t s, const std::vector<std::size_t>& positions) {
  std::size_t terms = 0;
  while (s > 0) {
    const auto it = std::upper_bound(positions.begin(), positions.end(), s);
    s -= *std::prev(it);
    ++terms;
  }
  return terms;
}

LengthSet interval(std::size_t lo, std::size_t hi) {
  LengthSet out;
  for (std::size_t i = lo; i <= hi; ++i) out.insert(i);
  return out;
}

LengthSet& insert_all(LengthSet& into, const LengthSet& from) {
  into.insert(from.begin(), from.end());
  return into;
}

// {ε_{n_i} : n_i ≤ upto, n_i ≠ skip}
LengthSet nonzero_digits(const ExpansionOfOne& e, std::size_t upto, std::size_t skip = 0) {
  LengthSet out;
  for (std::size_t p : nonzero_sequence(e, upto)) {
    if (p != skip) out.insert(e.digit(p));
  }
  return out;
}

}  // namespace

void require_non_integer(const ExpansionOfOne& e) {
  if (e.is_integer_beta()) {
    throw Error(ErrorCode::IntegerBeta, "beta is an integer; run-length results need a non-integer beta");
  }
}

std::size_t tau(std::size_t s, const ExpansionOfOne& e) {
  if (s == 0) throw Error(ErrorCode::InvalidInput, "tau is defined for s >= 1");
  return greedy_terms(s, nonzero_sequence(e, s));
}

std::vector<std::size_t> tau_table(const ExpansionOfOne& e, std::size_t bound) {
  const auto positions = nonzero_sequence(e, bound);
  std::vector<std::size_t> out(bound);
  for (std::size_t s = 1; s <= bound; ++s) out[s - 1] = greedy_terms(s, positions);
  return out;
}

std::vector<std::size_t> tau_table(std::span<const Digit> prefix) {
  if (prefix.empty() || prefix[0] == 0) throw Error(ErrorCode::InvalidInput, "digit prefix must start with a nonzero digit");
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] != 0) positions.push_back(i + 1);
  }
  std::vector<std::size_t> out(prefix.size());
  for (std::size_t s = 1; s <= prefix.size(); ++s) out[s - 1] = greedy_terms(s, positions);
  return out;
}

std::size_t max_tau(const ExpansionOfOne& e, std::size_t bound) {
  const auto table = tau_table(e, bound);
  return table.empty() ? 0 : *std::max_element(table.begin(), table.end());
}

RunStream::RunStream(const ExpansionOfOne& e, std::size_t n) : e_(&e), it_(e, n) {}

RunStream::RunStream(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end)
    : e_(&e), it_(e, n, begin, end) {}

std::optional<RunRecord> RunStream::next() {
  if (!has_pending_) {
    if (!it_.next()) return std::nullopt;
    pending_full_ = assume_admissible::is_full(it_.current(), *e_);
  }
  RunRecord r{pending_full_ ? RunKind::Full : RunKind::NonFull, it_.index(), 1, it_.current(), {}};
  has_pending_ = false;
  while (true) {
    r.last_word = it_.current();
    if (!it_.next()) break;
    const bool full = assume_admissible::is_full(it_.current(), *e_);
    if (full != (r.kind == RunKind::Full)) {
      has_pending_ = true;
      pending_full_ = full;
      break;
    }
    ++r.length;
  }
  return r;
}

std::vector<RunRecord> maximal_runs(const ExpansionOfOne& e, std::size_t n) {
  std::vector<RunRecord> out;
  RunStream stream(e, n);
  while (auto r = stream.next()) out.push_back(std::move(*r));
  return out;
}

void RunSummary::add(RunRecord r) {
  ++runs;
  words += r.length;
  if (edge.size() == 2) {
    (edge[1].kind == RunKind::Full ? interior_full : interior_nonfull).insert(edge[1].length);
    edge[1] = std::move(r);
  } else {
    edge.push_back(std::move(r));
  }
}

void RunSummary::merge(RunSummary next) {
  if (next.edge.empty()) return;
  if (edge.empty()) {
    *this = std::move(next);
    return;
  }
  std::vector<RunRecord> line = std::move(edge);
  auto rest = next.edge.begin();
  if (line.back().kind == rest->kind) {
    line.back().length += rest->length;
    line.back().last_word = std::move(rest->last_word);
    ++rest;
    --runs;
  }
  line.insert(line.end(), std::make_move_iterator(rest), std::make_move_iterator(next.edge.end()));

  runs += next.runs;
  words += next.words;
  insert_all(interior_full, next.interior_full);
  insert_all(interior_nonfull, next.interior_nonfull);
  for (std::size_t i = 1; i + 1 < line.size(); ++i) {
    (line[i].kind == RunKind::Full ? interior_full : interior_nonfull).insert(line[i].length);
  }
  edge.clear();
  edge.push_back(std::move(line.front()));
  if (line.size() > 1) edge.push_back(std::move(line.back()));
}

RunSummary summarize_runs(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end) {
  RunSummary out;
  RunStream stream(e, n, begin, end);
  while (auto r = stream.next()) out.add(std::move(*r));
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> shard_ranges(std::uint64_t total, unsigned shards) {
  if (shards == 0) throw Error(ErrorCode::InvalidInput, "shard count must be at least 1");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  auto bound = [&](unsigned i) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * i / shards);
  };
  for (unsigned i = 0; i < shards; ++i) out.emplace_back(bound(i), bound(i + 1));
  return out;
}

RunSummary summarize_runs_sharded(const ExpansionOfOne& e, std::size_t n, unsigned shards) {
  const auto ranges = shard_ranges(count(e, n), shards);
  std::vector<RunSummary> parts(ranges.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      workers.emplace_back([&, i] { parts[i] = summarize_runs(e, n, ranges[i].first, ranges[i].second); });
    }
  }
  RunSummary out;
  for (auto& p : parts) out.merge(std::move(p));
  return out;
}

RunSets run_sets_from(const RunSummary& s) {
  RunSets out{s.interior_full, s.interior_nonfull, Provenance::Enumerated};
  for (const auto& r : s.edge) (r.kind == RunKind::Full ? out.F : out.N).insert(r.length);
  return out;
}

RunSets run_sets_enumerated(const ExpansionOfOne& e, std::size_t n, unsigned shards) {
  require_non_integer(e);
  return run_sets_from(shards <= 1 ? summarize_runs(e, n, 0, count(e, n)) : summarize_runs_sharded(e, n, shards));
}

int F_formula_case(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  if (!e.is_finite() || e.length() >= n) return 1;
  return n % e.length() == 0 ? 2 : 3;
}

int N_formula_case(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  if (e.alphabet_max() >= 2) return e.is_finite() ? 2 : 1;
  const std::size_t n2 = second_nonzero_position(e);
  if (!e.is_finite()) return n < n2 ? 3 : 4;
  const std::size_t m = e.length();
  if (n2 == m) return n < m ? 5 : (n == m ? 6 : 7);
  if (n < n2) return 8;
  return n < m ? 9 : 10;
}

LengthSet F_set_formula(const ExpansionOfOne& e, std::size_t n) {
  const int c = F_formula_case(e, n);
  if (c == 1) return nonzero_digits(e, n);
  const std::size_t m = e.length();
  LengthSet out = nonzero_digits(e, m, c == 3 ? m : 0);
  out.insert(static_cast<std::size_t>(e.digit(1)) + e.digit(m));
  return out;
}

LengthSet N_set_formula(const ExpansionOfOne& e, std::size_t n) {
  const int c = N_formula_case(e, n);
  const std::size_t m = e.length();
  auto d5 = [&] {
    const std::size_t n2 = second_nonzero_position(e);
    LengthSet out = interval(1, std::min(n2 - 1, n - n2 + 1));
    const auto t = tau_table(e, n);
    for (std::size_t s = n2 - 1; s <= n; ++s) out.insert(t[s - 1]);
    return out;
  };
  switch (c) {
    case 1:
      return interval(1, max_tau(e, n));
    case 2:
      return interval(1, max_tau(e, std::min(m - 1, n)));
    case 3:
    case 5:
    case 8:
      return {n};
    case 4:
    case 9:
      return d5();
    case 6:
      return {m - 1};
    case 7: {
      LengthSet out = interval(1, std::min(n - m, m - 1));
      out.insert(m - 1);
      return out;
    }
    default:
      return interval(1, max_tau(e, m - 1));
  }
}

RunSets run_sets_formula(const ExpansionOfOne& e, std::size_t n) {
  return RunSets{F_set_formula(e, n), N_set_formula(e, n), Provenance::Formula};
}

std::size_t max_F(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  if (e.is_finite() && e.length() < n) return static_cast<std::size_t>(e.digit(1)) + e.digit(e.length());
  return e.digit(1);
}

std::size_t min_F(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  const std::size_t m = e.length();
  const LengthSet values = (e.is_finite() && m < n && n % m != 0) ? nonzero_digits(e, m - 1) : nonzero_digits(e, n);
  return *values.begin();
}

std::size_t max_N(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  return max_tau(e, e.is_finite() ? std::min(e.length() - 1, n) : n);
}

std::size_t min_N(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  if (e.alphabet_max() == 1) {
    const std::size_t n2 = second_nonzero_position(e);
    if (e.is_finite() && e.length() == n2 && n == n2) return e.length() - 1;
    if (n < n2) return n;
  }
  return 1;
}

TailRunPrediction tail_run_prediction(std::span<const Digit> w, const ExpansionOfOne& e) {
  const std::size_t s = tail_prefix_length(w, e);
  if (s == 0) throw Error(ErrorCode::TailMismatch, "word does not end with an allowed prefix of the expansion of 1");
  return tail_run_prediction(w, e, s);
}

TailRunPrediction tail_run_prediction(std::span<const Digit> w, const ExpansionOfOne& e, std::size_t s) {
  require_non_integer(e);
  require_admissible(w, e);
  const std::size_t limit = e.is_finite() ? std::min(e.length() - 1, w.size()) : w.size();
  bool ends = s >= 1 && s <= limit;
  for (std::size_t i = 1; ends && i <= s; ++i) ends = w[w.size() - s + i - 1] == e.digit(i);
  if (!ends) {
    throw Error(ErrorCode::TailMismatch, "word does not end with eps_1..eps_" + std::to_string(s));
  }
  const std::size_t t = tau(s, e);
  TailRunPrediction out{s, t, true};
  Word cur(w.begin(), w.end());
  for (std::size_t i = 0; i < t && out.confirmed; ++i) {
    out.confirmed = !assume_admissible::is_full(cur, e);
    auto prev = predecessor(cur, e);
    if (!prev) {
      out.confirmed = false;
      break;
    }
    cur = std::move(*prev);
  }
  if (out.confirmed) out.confirmed = assume_admissible::is_full(cur, e);
  return out;
}

SMaxClass s_max_classify(const ExpansionOfOne& e, std::size_t n) {
  require_non_integer(e);
  if (e.is_finite() && n % e.length() == 0) return {RunKind::Full, e.digit(e.length())};
  return {RunKind::NonFull, 0};
}

}  // namespace betawords
