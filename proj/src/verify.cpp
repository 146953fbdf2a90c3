#include "betawords/verify.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "betawords/certified.hpp"
#include "betawords/runs.hpp"
#include "betawords/structure.hpp"
#include "betawords/words.hpp"
#include "json.hpp"

namespace betawords {

namespace {

constexpr std::string_view kBundledCorpus = R"(# id            expansion of 1
golden          1,1
wide-finite     3,0,2,0,0,0,0,1
sparse-finite   1,0,1,0,0,0,1
tribonacci      1,1,1
short-finite    1,0,0,1
sparse-periodic 1,0,0;1,0,0,0
wide-periodic   2,0,1;0,0,1
)";

std::string show(std::span<const Digit> w, const ExpansionOfOne& e) { return format_digits(w, e.alphabet_max()); }

std::string show(const LengthSet& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

class FailureLog {
 public:
  explicit FailureLog(std::size_t cap) : cap_(cap) {}

  void add(std::string message) {
    ++count_;
    if (kept_.size() < cap_) kept_.push_back(std::move(message));
  }
  void check(bool ok, const std::string& message) {
    if (!ok) add(message);
  }
  void append(FailureLog other) {
    count_ += other.count_;
    for (auto& m : other.kept_) {
      if (kept_.size() < cap_) kept_.push_back(std::move(m));
    }
  }
  std::uint64_t count() const { return count_; }
  std::vector<std::string> take() { return std::move(kept_); }

 private:
  std::size_t cap_;
  std::uint64_t count_ = 0;
  std::vector<std::string> kept_;
};

// Endpoint sums of double enclosures, kept exact so that summing many
// cylinders adds no rounding of its own.
struct ExactSum {
  Rational lo = 0;
  Rational hi = 0;

  void add(const Enclosure& x) {
    lo += Rational(x.lo);
    hi += Rational(x.hi);
  }
  void add(const ExactSum& x) {
    lo += x.lo;
    hi += x.hi;
  }
};

struct ShardResult {
  RunSummary runs;
  ExactSum partition;
  FailureLog failures;
};

// Every per-word property over one lex range, plus the run summary.
ShardResult check_range(const ExpansionOfOne& e, std::size_t n, std::uint64_t begin, std::uint64_t end,
                        const VerifyOptions& opt, const CylinderCalculator* calc) {
  ShardResult out{{}, {}, FailureLog(opt.max_failures)};
  auto& log = out.failures;
  const Digit top = e.alphabet_max();
  const std::size_t tail_limit = e.is_finite() ? std::min(e.length() - 1, n) : n;

  std::optional<RunRecord> run;
  WordEnumerator it(e, n, begin, end);
  while (it.next()) {
    const Word& w = it.current();
    const bool full = assume_admissible::is_full(w, e);
    const RunKind kind = full ? RunKind::Full : RunKind::NonFull;
    if (run && run->kind == kind) {
      ++run->length;
      run->last_word = w;
    } else {
      if (run) out.runs.add(std::move(*run));
      run = RunRecord{kind, it.index(), 1, w, w};
    }

    const std::string label = show(w, e);
    const std::size_t s = assume_admissible::tail_prefix_length(w, e);
    log.check(full == (s == 0), "structural and tail criteria disagree on " + label);
    if (full) {
      log.check(w.back() < top, "full word " + label + " ends with a digit >= floor(beta)");
      log.check(top > 1 || w.back() == 0, "full word " + label + " ends with a nonzero digit while beta < 2");
    }

    if (calc && (n <= opt.numeric_max_n || n <= opt.partition_max_n)) {
      const CylinderInterval cyl = calc->cylinder(w);
      if (n <= opt.numeric_max_n) {
        const LengthVerdict v = calc->verdict(cyl, opt.numeric_tol);
        if (v == LengthVerdict::Undecided) {
          log.add("cylinder length criterion undecided on " + label);
        } else {
          log.check((v == LengthVerdict::Full) == full, "cylinder length criterion disagrees on " + label);
        }
      }
      if (n <= opt.partition_max_n) out.partition.add(cyl.length);
    }

    if (n <= opt.word_property_max_n) {
      if (full) {
        for (std::size_t k = 1; k < n; ++k) {
          if (!assume_admissible::is_full(std::span<const Digit>(w).subspan(k), e)) {
            log.add("suffix " + std::to_string(k) + " of full word " + label + " is not full");
            break;
          }
        }
      }
      const Decomposition d = decompose(w, e);
      log.check(reconstruct(d, e) == w, "decomposition does not reconstruct " + label);
      for (const auto& b : d.blocks) {
        const Word block = reconstruct(Decomposition{{}, b}, e);
        log.check(assume_admissible::is_full(block, e), "non-full block in the decomposition of " + label);
      }
      for (std::size_t t = 1; t <= tail_limit; ++t) {
        if (!std::equal(w.end() - static_cast<std::ptrdiff_t>(t), w.end(), e.sequence().prefix(t).begin())) continue;
        const auto p = tail_run_prediction(w, e, t);
        log.check(p.confirmed, "tail run of " + std::to_string(p.predicted) + " from " + label + " with s=" +
                                   std::to_string(t) + " does not hold");
      }
    }

    if (n <= opt.lowering_max_n && w.back() != 0) {
      Word lowered = w;
      for (Digit d = 0; d < w.back(); ++d) {
        lowered.back() = d;
        log.check(assume_admissible::is_full(lowered, e),
                  "lowering the last digit of " + label + " to " + std::to_string(d) + " is not full");
      }
    }
  }
  if (run) out.runs.add(std::move(*run));
  return out;
}

std::vector<std::size_t> as_vector(const LengthSet& s) { return {s.begin(), s.end()}; }

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) {
      throw Error(ErrorCode::InvalidInput, "corpus line " + std::to_string(line_no) + ": expected [ID] SEQUENCE",
                  line_no);
    }
    const std::string& seq = tokens.back();
    out.push_back(CorpusEntry{tokens.front(), ExpansionOfOne::validate(parse_sequence(seq))});
  }
  return out;
}

std::string_view bundled_corpus_text() { return kBundledCorpus; }

std::vector<CorpusEntry> bundled_corpus() { return parse_corpus(kBundledCorpus); }

CaseReport verify_case(const CorpusEntry& entry, std::size_t n, const VerifyOptions& opt) {
  const ExpansionOfOne& e = entry.expansion;
  require_non_integer(e);
  CaseReport report;
  report.case_id = entry.case_id;
  report.n = n;
  report.F_case = F_formula_case(e, n);
  report.N_case = N_formula_case(e, n);

  std::optional<CylinderCalculator> calc;
  if (n <= opt.numeric_max_n || n <= opt.partition_max_n) calc.emplace(e, n);

  const std::uint64_t total = count(e, n);
  const auto ranges = shard_ranges(total, std::max(opt.shards, 1u));
  std::vector<std::optional<ShardResult>> parts(ranges.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      workers.emplace_back([&, i] {
        parts[i].emplace(check_range(e, n, ranges[i].first, ranges[i].second, opt, calc ? &*calc : nullptr));
      });
    }
  }
  RunSummary runs;
  ExactSum partition;
  FailureLog log(opt.max_failures);
  for (auto& p : parts) {
    runs.merge(std::move(p->runs));
    partition.add(p->partition);
    log.append(std::move(p->failures));
  }

  const RunSets enumerated = run_sets_from(runs);
  LengthSet F = F_set_formula(e, n);
  const LengthSet N = N_set_formula(e, n);
  if (opt.corrupt_formula) F.insert(*F.rbegin() + 1);
  report.F_formula = as_vector(F);
  report.N_formula = as_vector(N);
  report.F_enum = as_vector(enumerated.F);
  report.N_enum = as_vector(enumerated.N);
  report.match = F == enumerated.F && N == enumerated.N;
  report.words = runs.words;
  if (F != enumerated.F) {
    log.add("F formula " + show(F) + " differs from enumeration " + show(enumerated.F));
  }
  if (N != enumerated.N) {
    log.add("N formula " + show(N) + " differs from enumeration " + show(enumerated.N));
  }

  log.check(runs.words == total, "runs cover " + std::to_string(runs.words) + " of " + std::to_string(total) + " words");
  if (!enumerated.N.empty()) {
    const std::size_t longest = *enumerated.N.rbegin();
    log.check(longest <= n, "non-full run of length " + std::to_string(longest) + " exceeds n");
    if (e.is_finite()) log.check(longest + 1 <= e.length(), "non-full run of length " + std::to_string(longest) + " exceeds M-1");
    log.check(max_N(e, n) == longest, "max N prediction " + std::to_string(max_N(e, n)) + " differs from enumeration");
    log.check(min_N(e, n) == *enumerated.N.begin(), "min N prediction " + std::to_string(min_N(e, n)) + " differs from enumeration");
  }
  if (!enumerated.F.empty()) {
    log.check(max_F(e, n) == *enumerated.F.rbegin(), "max F prediction " + std::to_string(max_F(e, n)) + " differs from enumeration");
    log.check(min_F(e, n) == *enumerated.F.begin(), "min F prediction " + std::to_string(min_F(e, n)) + " differs from enumeration");
  }
  if (e.alphabet_max() == 1) {
    const LengthSet expected = (!e.is_finite() || e.length() >= n) ? LengthSet{1} : LengthSet{1, 2};
    log.check(enumerated.F == expected, "F for beta < 2 is " + show(enumerated.F) + ", expected " + show(expected));
  }
  if (!runs.edge.empty()) {
    const RunRecord& last = runs.edge.back();
    const SMaxClass smax = s_max_classify(e, n);
    log.check(last.kind == smax.kind, "kind of the last run differs from the S_max prediction");
    if (smax.kind == RunKind::Full) {
      log.check(last.length == smax.length, "last full run has length " + std::to_string(last.length) +
                                                ", predicted " + std::to_string(smax.length));
    }
    log.check(last.last_word == max_word(e, n), "last run does not end at the maximal word");
  }
  if (n <= opt.partition_max_n) {
    const Rational slack = Rational(opt.numeric_tol) * static_cast<unsigned long>(n);
    log.check(partition.lo >= 1 - slack && partition.hi <= 1 + slack,
              "cylinder lengths sum to [" + format_decimal(partition.lo, 17, Rounding::Down) + "," +
                  format_decimal(partition.hi, 17, Rounding::Up) + "], not 1");
  }

  report.failure_count = log.count();
  report.failures = log.take();
  return report;
}

ExpansionReport verify_expansion(const CorpusEntry& entry, const VerifyOptions& opt) {
  const ExpansionOfOne& e = entry.expansion;
  require_non_integer(e);
  ExpansionReport report{entry.case_id, format_expansion(e), 0, {}};
  FailureLog log(opt.max_failures);
  const std::size_t T = std::max(opt.n_max, opt.truncation_max);

  const auto& seq = e.sequence();
  for (std::size_t k = 1; k <= seq.preperiod_length() + seq.period_length(); ++k) {
    log.check(decide_lex_order(seq.shifted(k), seq) == LexOrder::Less, "shift " + std::to_string(k) + " is not below the sequence");
  }

  for (std::size_t k = 1; k <= opt.truncation_max; ++k) {
    const Word eps = seq.prefix(k);
    if (is_admissible(eps, e)) log.check(!is_full(eps, e), "truncation of length " + std::to_string(k) + " is full");
    const Word star = max_word(e, k);
    const bool expected = e.is_finite() && k % e.length() == 0;
    log.check(is_full(star, e) == expected, "modified truncation of length " + std::to_string(k) +
                                                (expected ? " is not full" : " is full"));
  }

  const auto positions = nonzero_sequence(e, T);
  log.check(!positions.empty() && positions.front() == 1, "nonzero sequence does not start at 1");
  const auto t = tau_table(e, T);
  for (std::size_t p : positions) log.check(t[p - 1] == 1, "tau at nonzero position " + std::to_string(p) + " is not 1");
  const std::size_t n2 = second_nonzero_position(e);
  std::size_t running_max = 0;
  LengthSet seen;
  std::size_t previous_r = 0;
  for (std::size_t s = 1; s <= T; ++s) {
    const std::size_t v = t[s - 1];
    log.check(v <= s, "tau(" + std::to_string(s) + ") exceeds s");
    if (s < n2) log.check(v == s, "tau(" + std::to_string(s) + ") differs from s below n_2");
    running_max = std::max(running_max, v);
    seen.insert(v);
    log.check(seen.size() == running_max && *seen.rbegin() == running_max,
              "tau values up to " + std::to_string(s) + " do not form 1..max");
    const std::size_t r = max_zero_run(e, s);
    log.check(r >= previous_r, "zero-run length decreases at " + std::to_string(s));
    previous_r = r;
    if (!e.is_finite() || s <= e.length()) {
      log.check(v <= r + 1, "tau(" + std::to_string(s) + ") exceeds r_s + 1");
    }
  }

  std::vector<std::vector<Word>> full_words(opt.concat_max + 1);
  for (std::size_t len = 1; len <= opt.concat_max; ++len) {
    WordEnumerator it(e, len);
    while (it.next()) {
      if (assume_admissible::is_full(it.current(), e)) full_words[len].push_back(it.current());
    }
  }
  for (std::size_t a = 1; a <= opt.concat_max; ++a) {
    for (std::size_t b = 1; b <= opt.concat_max; ++b) {
      for (const Word& u : full_words[a]) {
        for (const Word& v : full_words[b]) {
          Word uv = u;
          uv.insert(uv.end(), v.begin(), v.end());
          if (first_rejection(uv, e) || !assume_admissible::is_full(uv, e)) {
            log.add("concatenation " + show(u, e) + "." + show(v, e) + " of full words is not full");
          }
        }
      }
    }
  }

  constexpr std::size_t kRoundTrip = 30;
  try {
    const auto extraction =
        expansion_digits_from_beta(solve_beta_bits(e, 64), kRoundTrip, max_precision_from_env(), refiner_for(e));
    log.check(extraction.digits == seq.prefix(kRoundTrip), "digits recovered from beta differ from the expansion");
  } catch (const Error& ex) {
    log.add(std::string("digit recovery failed: ") + ex.what());
  }

  report.failure_count = log.count();
  report.failures = log.take();
  return report;
}

VerifyReport verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options) {
  if (options.n_min < 1 || options.n_min > options.n_max) {
    throw Error(ErrorCode::InvalidInput, "n range must satisfy 1 <= A <= B");
  }
  for (const auto& entry : corpus) {
    if (entry.expansion.is_integer_beta()) {
      throw Error(ErrorCode::IntegerBeta, "corpus entry '" + entry.case_id + "' has integer beta");
    }
  }
  VerifyReport report;
  for (const auto& entry : corpus) report.expansions.push_back(verify_expansion(entry, options));
  for (const auto& entry : corpus) {
    for (std::size_t n = options.n_min; n <= options.n_max; ++n) {
      report.cases.push_back(verify_case(entry, n, options));
    }
  }
  return report;
}

bool VerifyReport::pass() const {
  return std::all_of(expansions.begin(), expansions.end(), [](const auto& r) { return r.failure_count == 0; }) &&
         std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.pass(); });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["pass"] = pass();
  doc["expansions"] = nlohmann::ordered_json::array();
  for (const auto& r : expansions) {
    nlohmann::ordered_json item;
    item["case_id"] = r.case_id;
    item["expansion"] = r.expansion;
    item["failure_count"] = r.failure_count;
    item["failures"] = r.failures;
    doc["expansions"].push_back(std::move(item));
  }
  doc["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : cases) {
    nlohmann::ordered_json item;
    item["case_id"] = c.case_id;
    item["n"] = c.n;
    item["F_formula"] = c.F_formula;
    item["F_enum"] = c.F_enum;
    item["N_formula"] = c.N_formula;
    item["N_enum"] = c.N_enum;
    item["match"] = c.match;
    item["F_case"] = c.F_case;
    item["N_case"] = c.N_case;
    item["words"] = c.words;
    item["failure_count"] = c.failure_count;
    item["failures"] = c.failures;
    item["pass"] = c.pass();
    doc["cases"].push_back(std::move(item));
  }
  return doc.dump(2);
}

}  // namespace betawords
