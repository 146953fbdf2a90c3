// beta-words: command-line front end over the betawords C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "betawords/betawords.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kMismatch = 3, kPrecondition = 4 };

struct Failure {
  bw_status status;
};

int exit_code(bw_status s) {
  switch (s) {
    case BW_OK: return kOk;
    case BW_ERR_INTEGER_BETA: return kPrecondition;
    case BW_ERR_INTERNAL: return kInternal;
    default: return kInput;
  }
}

void check(bw_status s) {
  if (s != BW_OK) throw Failure{s};
}

template <class F>
std::string fetch(F&& call) {
  std::size_t needed = 0;
  const bw_status probe = call(nullptr, 0, &needed);
  if (probe != BW_ERR_BUFFER_TOO_SMALL) check(probe);
  std::string out(needed, '\0');
  check(call(out.data(), out.size(), &needed));
  out.resize(needed - 1);
  return out;
}

struct ExpansionDeleter {
  void operator()(bw_expansion* e) const { bw_expansion_free(e); }
};
using ExpansionPtr = std::unique_ptr<bw_expansion, ExpansionDeleter>;

struct Job {
  std::string seq;
  std::string beta;
  std::string tol = "1e-12";
  std::size_t n = 0;
  std::string n_range;
  std::string format = "plain";
  int precision = 17;
  unsigned shards = 1;
  bool check = false;
  double length_tol = 1e-12;
  std::string corpus;
  bool corrupt_formula = false;
};

ExpansionPtr expansion_from_seq(const std::string& seq) {
  bw_expansion* raw = nullptr;
  const auto first = seq.find_first_not_of(" \t");
  if (first != std::string::npos && seq[first] == '{') {
    check(bw_expansion_from_json(seq.c_str(), &raw));
  } else {
    check(bw_expansion_parse(seq.c_str(), &raw));
  }
  return ExpansionPtr(raw);
}

// Commands other than expand/tau need the exact expansion; a numeric β only
// provides it when the orbit of 1 is finite.
ExpansionPtr expansion_for(const Job& job) {
  if (!job.seq.empty()) return expansion_from_seq(job.seq);
  bw_expansion* raw = nullptr;
  check(bw_beta_expansion(job.beta.c_str(), job.tol.c_str(), 256, bw_max_precision_bits(), &raw));
  return ExpansionPtr(raw);
}

bw_expansion_info info_of(const bw_expansion* e) {
  bw_expansion_info info{};
  check(bw_expansion_get_info(e, &info));
  return info;
}

std::string word_text(const bw_expansion* e, const uint8_t* w, std::size_t n) {
  return fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_format_word(e, w, n, b, c, need); });
}

std::string digits_text(const std::vector<uint8_t>& d) {
  unsigned top = 0;
  for (auto x : d) top = std::max<unsigned>(top, x);
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (top > 9 && i) out += ',';
    out += std::to_string(d[i]);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string braces(const std::vector<std::size_t>& v) { return "{" + join(v) + "}"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Row emitter for csv / json / plain. Plain pads to fixed column widths.
class Table {
 public:
  Table(std::string format, std::vector<std::string> header, std::vector<std::size_t> widths = {})
      : format_(std::move(format)), header_(std::move(header)), widths_(std::move(widths)) {
    widths_.resize(header_.size(), 0);
    for (std::size_t i = 0; i < header_.size(); ++i) widths_[i] = std::max(widths_[i], header_[i].size());
    if (format_ == "csv") {
      std::vector<std::string> h;
      for (auto& x : header_) h.push_back(csv_field(x));
      line(h, ",");
    } else if (format_ == "plain") {
      plain(header_);
    } else {
      std::cout << "[";
    }
  }

  void row(const std::vector<std::string>& cells, const std::vector<bool>& numeric = {}) {
    if (format_ == "csv") {
      std::vector<std::string> c;
      for (auto& x : cells) c.push_back(csv_field(x));
      line(c, ",");
    } else if (format_ == "plain") {
      plain(cells);
    } else {
      json obj;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i < numeric.size() && numeric[i]) {
          obj[header_[i]] = json::parse(cells[i]);
        } else {
          obj[header_[i]] = cells[i];
        }
      }
      std::cout << (rows_ ? ",\n " : "\n ") << obj.dump();
    }
    ++rows_;
  }

  void finish() {
    if (format_ == "json") std::cout << (rows_ ? "\n]\n" : "]\n");
  }

 private:
  void line(const std::vector<std::string>& cells, const char* sep) {
    for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? sep : "") << cells[i];
    std::cout << '\n';
  }
  void plain(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cell = cells[i];
      if (i + 1 < cells.size() && cell.size() < widths_[i]) cell.resize(widths_[i], ' ');
      out += (i ? "  " : "") + cell;
    }
    std::cout << out << '\n';
  }

  std::string format_;
  std::vector<std::string> header_;
  std::vector<std::size_t> widths_;
  std::size_t rows_ = 0;
};

void print_pairs(const std::string& format, const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (format == "csv") {
    std::cout << "key,value\n";
    for (auto& [k, v] : pairs) std::cout << csv_field(k) << ',' << csv_field(v) << '\n';
    return;
  }
  std::size_t width = 0;
  for (auto& [k, v] : pairs) width = std::max(width, k.size());
  for (auto& [k, v] : pairs) std::cout << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

std::size_t require_n(const Job& job, std::size_t fallback = 0) {
  const std::size_t n = job.n ? job.n : fallback;
  if (n == 0) throw CLI::ValidationError("--n", "must be at least 1");
  return n;
}

// ---- expand ----------------------------------------------------------------

int cmd_expand(const Job& job) {
  const std::size_t n = require_n(job, 10);
  std::vector<uint8_t> eps(n), star(n);
  json doc;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::size_t> nonzero;
  std::size_t r_n = 0;

  ExpansionPtr e;
  bool finite_known = false;
  if (!job.seq.empty()) {
    e = expansion_from_seq(job.seq);
  } else {
    bw_beta_digits_info info{};
    check(bw_beta_digits(job.beta.c_str(), job.tol.c_str(), n, bw_max_precision_bits(), eps.data(), &info));
    if (info.finite) {
      bw_expansion* raw = nullptr;
      check(bw_beta_expansion(job.beta.c_str(), job.tol.c_str(), n, bw_max_precision_bits(), &raw));
      e.reset(raw);
    } else {
      // Not finite within n digits, so ε* agrees with ε on this prefix.
      star = eps;
      std::size_t run = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (eps[i]) nonzero.push_back(i + 1);
        run = eps[i] ? 0 : run + 1;
        r_n = std::max(r_n, run);
      }
      doc["beta"] = job.beta;
      doc["tol"] = job.tol;
      doc["finite"] = nullptr;
    }
  }
  if (e) {
    finite_known = true;
    const auto info = info_of(e.get());
    check(bw_expansion_digits(e.get(), n, eps.data()));
    check(bw_expansion_modified_digits(e.get(), n, star.data()));
    std::size_t cnt = 0;
    check(bw_expansion_nonzero(e.get(), n, nullptr, 0, &cnt));
    nonzero.resize(cnt);
    check(bw_expansion_nonzero(e.get(), n, nonzero.data(), cnt, &cnt));
    check(bw_expansion_max_zero_run(e.get(), n, &r_n));
    doc["expansion"] = fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_expansion_format(e.get(), b, c, need); });
    doc["finite"] = static_cast<bool>(info.is_finite);
    if (info.is_finite) doc["length"] = info.length;
  }

  doc["n"] = n;
  doc["eps"] = digits_text(eps);
  doc["eps_star"] = digits_text(star);
  if (e) {
    doc["eps_star_period"] =
        fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_expansion_format_modified(e.get(), b, c, need); });
  }
  doc["nonzero"] = nonzero;
  doc["r_n"] = r_n;
  if (e) {
    doc["beta"] = fetch([&](char* b, std::size_t c, std::size_t* need) {
      return bw_expansion_solve_beta(e.get(), "1e-18", job.precision, b, c, need);
    });
  }

  if (job.format == "json") {
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  if (finite_known) pairs.emplace_back("expansion", doc["expansion"].get<std::string>());
  pairs.emplace_back("eps", doc["eps"].get<std::string>());
  pairs.emplace_back("eps*", doc["eps_star"].get<std::string>());
  if (doc.contains("eps_star_period")) pairs.emplace_back("eps* period", doc["eps_star_period"].get<std::string>());
  pairs.emplace_back("nonzero", join(nonzero));
  pairs.emplace_back("r_n", std::to_string(r_n));
  if (finite_known) {
    pairs.emplace_back("finite", doc["finite"].get<bool>() ? "yes (M=" + std::to_string(doc["length"].get<std::size_t>()) + ")" : "no");
    pairs.emplace_back("beta", doc["beta"].get<std::string>());
  } else {
    pairs.emplace_back("finite", "not within " + std::to_string(n) + " digits");
  }
  print_pairs(job.format, pairs);
  return kOk;
}

// ---- validate --------------------------------------------------------------

int cmd_validate(const Job& job) {
  const ExpansionPtr e = expansion_for(job);
  const auto info = info_of(e.get());
  const std::string text = fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_expansion_format(e.get(), b, c, need); });
  const std::string js = fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_expansion_to_json(e.get(), b, c, need); });
  if (job.format == "json") {
    json doc;
    doc["valid"] = true;
    doc["expansion"] = text;
    doc["sequence"] = json::parse(js);
    doc["finite"] = static_cast<bool>(info.is_finite);
    doc["length"] = info.length;
    doc["alphabet_max"] = info.alphabet_max;
    doc["integer_beta"] = static_cast<bool>(info.is_integer_beta);
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  print_pairs(job.format, {{"valid", "yes"},
                           {"expansion", text},
                           {"json", js},
                           {"finite", info.is_finite ? "yes" : "no"},
                           {"length", std::to_string(info.length)},
                           {"alphabet_max", std::to_string(info.alphabet_max)},
                           {"integer_beta", info.is_integer_beta ? "yes" : "no"}});
  return kOk;
}

// ---- enumerate / classify ----------------------------------------------------

struct EnumeratorDeleter {
  void operator()(bw_enumerator* p) const { bw_enumerator_free(p); }
};
struct CylindersDeleter {
  void operator()(bw_cylinders* p) const { bw_cylinders_free(p); }
};

std::size_t word_width(const bw_expansion* e, std::size_t n) {
  const auto info = info_of(e);
  return info.alphabet_max > 9 ? n * 4 : n;
}

int cmd_enumerate(const Job& job) {
  const ExpansionPtr e = expansion_for(job);
  const std::size_t n = require_n(job);
  bw_enumerator* raw = nullptr;
  check(bw_enumerator_new_all(e.get(), n, &raw));
  std::unique_ptr<bw_enumerator, EnumeratorDeleter> it(raw);
  Table table(job.format, {"index", "word", "full"}, {6, word_width(e.get(), n), 4});
  const uint8_t* w = nullptr;
  uint64_t index = 0;
  int has = 0;
  while (true) {
    check(bw_enumerator_next(it.get(), &w, &index, &has));
    if (!has) break;
    bw_word_class wc{};
    check(bw_classify_word(e.get(), w, n, &wc));
    table.row({std::to_string(index), word_text(e.get(), w, n), wc.full ? "1" : "0"}, {true, false, true});
  }
  table.finish();
  return kOk;
}

std::string interval_text(bw_interval x, int digits) {
  return fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_format_interval(x, digits, b, c, need); });
}

int cmd_classify(const Job& job) {
  const ExpansionPtr e = expansion_for(job);
  const std::size_t n = require_n(job);
  bw_enumerator* raw = nullptr;
  check(bw_enumerator_new_all(e.get(), n, &raw));
  std::unique_ptr<bw_enumerator, EnumeratorDeleter> it(raw);
  bw_cylinders* craw = nullptr;
  check(bw_cylinders_new(e.get(), n, &craw));
  std::unique_ptr<bw_cylinders, CylindersDeleter> cyl(craw);

  std::vector<std::string> header = {"word", "full", "tail_s", "block_count", "tail_l", "cyl_left", "cyl_right"};
  std::vector<bool> numeric = {false, true, true, true, true, false, false};
  if (job.check) {
    header.insert(header.end(), {"full_by_tail", "full_by_length"});
    numeric.insert(numeric.end(), {true, false});
  }
  const std::size_t cyl_width = static_cast<std::size_t>(job.precision) * 2 + 6;
  Table table(job.format, header, {word_width(e.get(), n), 4, 6, 11, 6, cyl_width, cyl_width});

  std::uint64_t disagreements = 0;
  std::uint64_t undecided = 0;
  std::string first_bad;
  const uint8_t* w = nullptr;
  uint64_t index = 0;
  int has = 0;
  while (true) {
    check(bw_enumerator_next(it.get(), &w, &index, &has));
    if (!has) break;
    bw_word_class wc{};
    check(bw_classify_word(e.get(), w, n, &wc));
    bw_cylinder_info ci{};
    check(bw_cylinder(cyl.get(), w, n, &ci));
    const std::string word = word_text(e.get(), w, n);
    std::vector<std::string> cells = {word,
                                      wc.full ? "1" : "0",
                                      std::to_string(wc.tail_s),
                                      std::to_string(wc.block_count),
                                      std::to_string(wc.tail_length),
                                      interval_text(ci.left, job.precision),
                                      interval_text(ci.right, job.precision)};
    if (job.check) {
      bw_length_verdict v{};
      check(bw_cylinder_verdict(cyl.get(), w, n, job.length_tol, &v));
      const bool bad = wc.full_by_tail != wc.full || (v != BW_VERDICT_UNDECIDED && (v == BW_VERDICT_FULL) != (wc.full != 0));
      if (v == BW_VERDICT_UNDECIDED) ++undecided;
      if (bad && disagreements++ == 0) first_bad = word;
      cells.push_back(wc.full_by_tail ? "1" : "0");
      cells.push_back(v == BW_VERDICT_UNDECIDED ? "undecided" : (v == BW_VERDICT_FULL ? "1" : "0"));
    }
    table.row(cells, numeric);
  }
  table.finish();
  if (undecided) std::cerr << "length criterion undecided on " << undecided << " word(s)\n";
  if (disagreements) {
    std::cerr << "criteria disagree on " << disagreements << " word(s), first: " << first_bad << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---- runs -------------------------------------------------------------------

struct RunStreamDeleter {
  void operator()(bw_run_stream* p) const { bw_run_stream_free(p); }
};
struct RunSetsDeleter {
  void operator()(bw_run_sets* p) const { bw_run_sets_free(p); }
};

std::vector<std::size_t> get_set(const bw_run_sets* s, bw_set_id id) {
  std::size_t cnt = 0;
  check(bw_run_sets_get(s, id, nullptr, 0, &cnt));
  std::vector<std::size_t> out(cnt);
  check(bw_run_sets_get(s, id, out.data(), cnt, &cnt));
  return out;
}

int cmd_runs(const Job& job) {
  const ExpansionPtr e = expansion_for(job);
  const std::size_t n = require_n(job);
  bw_run_sets* sraw = nullptr;
  check(bw_run_sets_new(e.get(), n, job.shards, &sraw));
  std::unique_ptr<bw_run_sets, RunSetsDeleter> sets(sraw);
  int F_case = 0, N_case = 0, match = 0;
  check(bw_run_sets_cases(sets.get(), &F_case, &N_case, &match));
  bw_extremes ex{};
  check(bw_run_extremes(e.get(), n, &ex));

  bw_run_stream* rraw = nullptr;
  check(bw_run_stream_new(e.get(), n, &rraw));
  std::unique_ptr<bw_run_stream, RunStreamDeleter> stream(rraw);

  json runs_json = json::array();
  std::optional<Table> table;
  if (job.format != "json") {
    table.emplace(job.format, std::vector<std::string>{"kind", "start_index", "length", "first_word", "last_word"},
                  std::vector<std::size_t>{7, 11, 6, word_width(e.get(), n), word_width(e.get(), n)});
  }
  bw_run r{};
  int has = 0;
  while (true) {
    check(bw_run_stream_next(stream.get(), &r, &has));
    if (!has) break;
    const std::string kind = r.kind == BW_RUN_FULL ? "full" : "nonfull";
    const std::string first = word_text(e.get(), r.first_word, r.word_length);
    const std::string last = word_text(e.get(), r.last_word, r.word_length);
    if (table) {
      table->row({kind, std::to_string(r.start_index), std::to_string(r.length), first, last});
    } else {
      runs_json.push_back({{"kind", kind}, {"start_index", r.start_index}, {"length", r.length},
                           {"first_word", first}, {"last_word", last}});
    }
  }

  const auto F_enum = get_set(sets.get(), BW_SET_F_ENUM);
  const auto N_enum = get_set(sets.get(), BW_SET_N_ENUM);
  const auto F_formula = get_set(sets.get(), BW_SET_F_FORMULA);
  const auto N_formula = get_set(sets.get(), BW_SET_N_FORMULA);

  if (job.format == "json") {
    json doc;
    doc["n"] = n;
    doc["runs"] = runs_json;
    doc["F_enum"] = F_enum;
    doc["F_formula"] = F_formula;
    doc["N_enum"] = N_enum;
    doc["N_formula"] = N_formula;
    doc["F_case"] = F_case;
    doc["N_case"] = N_case;
    doc["max_F"] = ex.max_F;
    doc["min_F"] = ex.min_F;
    doc["max_N"] = ex.max_N;
    doc["min_N"] = ex.min_N;
    doc["match"] = static_cast<bool>(match);
    std::cout << doc.dump(2) << '\n';
  } else if (job.format == "plain") {
    table->finish();
    std::cout << '\n';
    print_pairs("plain", {{"F enumerated", braces(F_enum)},
                          {"F formula", braces(F_formula) + "  case " + std::to_string(F_case)},
                          {"N enumerated", braces(N_enum)},
                          {"N formula", braces(N_formula) + "  case " + std::to_string(N_case)},
                          {"max F", std::to_string(ex.max_F)},
                          {"min F", std::to_string(ex.min_F)},
                          {"max N", std::to_string(ex.max_N)},
                          {"min N", std::to_string(ex.min_N)},
                          {"match", match ? "true" : "false"}});
  } else {
    table->finish();
  }
  if (!match) {
    std::cerr << "formula and enumeration differ: F " << braces(F_formula) << " vs " << braces(F_enum) << ", N "
              << braces(N_formula) << " vs " << braces(N_enum) << '\n';
    return kMismatch;
  }
  return kOk;
}

// ---- tau --------------------------------------------------------------------

int cmd_tau(const Job& job) {
  const std::size_t bound = require_n(job, 10);
  std::vector<std::size_t> t(bound);
  if (!job.seq.empty()) {
    const ExpansionPtr e = expansion_from_seq(job.seq);
    check(bw_tau_table(e.get(), bound, t.data()));
  } else {
    std::vector<uint8_t> digits(bound);
    check(bw_beta_digits(job.beta.c_str(), job.tol.c_str(), bound, bw_max_precision_bits(), digits.data(), nullptr));
    check(bw_tau_table_from_digits(digits.data(), bound, t.data()));
  }
  Table table(job.format, {"s", "tau"}, {4, 3});
  for (std::size_t s = 1; s <= bound; ++s) table.row({std::to_string(s), std::to_string(t[s - 1])}, {true, true});
  table.finish();
  return kOk;
}

// ---- verify -----------------------------------------------------------------

struct ReportDeleter {
  void operator()(bw_verify_report* p) const { bw_verify_report_free(p); }
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  std::size_t a = 0, b = 0;
  try {
    if (dots == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    a = std::stoul(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("");
    b = std::stoul(text.substr(dots + 2), &used);
    if (used != text.size() - dots - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n-range", "expected A..B");
  }
  if (a < 1 || a > b) throw CLI::ValidationError("--n-range", "expected 1 <= A <= B");
  return {a, b};
}

int cmd_verify(const Job& job) {
  bw_verify_options opt{};
  if (!job.n_range.empty()) {
    std::tie(opt.n_min, opt.n_max) = parse_range(job.n_range);
  } else if (job.n) {
    opt.n_min = opt.n_max = job.n;
  } else {
    opt.n_min = 1;
    opt.n_max = 12;
  }
  opt.shards = job.shards;
  opt.corrupt_formula = job.corrupt_formula;

  std::string corpus;
  const char* corpus_ptr = nullptr;
  if (!job.corpus.empty()) {
    std::ifstream in(job.corpus);
    if (!in) {
      std::cerr << "error: cannot read corpus file " << job.corpus << '\n';
      return kInput;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    corpus = ss.str();
    corpus_ptr = corpus.c_str();
  } else if (!job.seq.empty()) {
    corpus = job.seq + "\n";
    corpus_ptr = corpus.c_str();
  }

  bw_verify_report* raw = nullptr;
  check(bw_verify(corpus_ptr, &opt, &raw));
  std::unique_ptr<bw_verify_report, ReportDeleter> report(raw);
  int pass = 0;
  check(bw_verify_report_pass(report.get(), &pass));
  const std::string doc = fetch([&](char* b, std::size_t c, std::size_t* need) { return bw_verify_report_json(report.get(), b, c, need); });

  if (job.format == "plain") {
    const json parsed = json::parse(doc);
    Table table("plain", {"case_id", "n", "F_formula", "F_enum", "N_formula", "N_enum", "match", "failures"},
                {15, 3, 10, 10, 10, 10, 5, 8});
    for (const auto& c : parsed["cases"]) {
      table.row({c["case_id"].get<std::string>(), std::to_string(c["n"].get<std::size_t>()),
                 braces(c["F_formula"].get<std::vector<std::size_t>>()), braces(c["F_enum"].get<std::vector<std::size_t>>()),
                 braces(c["N_formula"].get<std::vector<std::size_t>>()), braces(c["N_enum"].get<std::vector<std::size_t>>()),
                 c["match"].get<bool>() ? "true" : "false", std::to_string(c["failure_count"].get<std::uint64_t>())});
    }
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
  } else {
    std::cout << doc << '\n';
  }
  if (!pass) {
    std::cerr << fetch([&](char* b, std::size_t c, std::size_t* need) {
      return bw_verify_report_failures(report.get(), b, c, need);
    });
    return kMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full and non-full admissible words in beta-expansions"};
  app.require_subcommand(1);
  Job job;

  auto add_beta = [&](CLI::App* sub, bool required) {
    auto* seq = sub->add_option("--seq", job.seq, "expansion of 1: 3,0,2,0,0,0,0,1 | 1,0,0;1,0,0,0 | JSON");
    auto* beta = sub->add_option("--beta", job.beta, "numeric beta (decimal or p/q)");
    sub->add_option("--tol", job.tol, "half-width of the bracket around --beta")->capture_default_str();
    seq->excludes(beta);
    beta->excludes(seq);
    if (required) sub->callback([seq, beta] {
      if (seq->count() + beta->count() != 1) throw CLI::ValidationError("exactly one of --seq or --beta is required");
    });
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", job.format, "output format")->check(CLI::IsMember({"plain", "csv", "json"}))->capture_default_str();
  };

  auto* expand = app.add_subcommand("expand", "digits of the expansion of 1 and its modified form");
  add_beta(expand, true);
  expand->add_option("--n", job.n, "number of digits (default 10)");
  expand->add_option("--precision", job.precision, "decimals in printed brackets")->capture_default_str();
  add_format(expand);

  auto* validate = app.add_subcommand("validate", "check that a sequence is an expansion of 1");
  add_beta(validate, true);
  add_format(validate);

  auto* enumerate = app.add_subcommand("enumerate", "admissible words of length n in lex order");
  add_beta(enumerate, true);
  enumerate->add_option("--n", job.n, "word length")->required();
  add_format(enumerate);

  auto* classify = app.add_subcommand("classify", "full / non-full classification with cylinders");
  add_beta(classify, true);
  classify->add_option("--n", job.n, "word length")->required();
  classify->add_flag("--check", job.check, "also apply the tail and length criteria; exit 3 on disagreement");
  classify->add_option("--length-tol", job.length_tol, "tolerance of the length criterion")->capture_default_str();
  classify->add_option("--precision", job.precision, "decimals in printed intervals")->capture_default_str();
  add_format(classify);

  auto* runs = app.add_subcommand("runs", "maximal runs and run-length sets");
  add_beta(runs, true);
  runs->add_option("--n", job.n, "word length")->required();
  runs->add_option("--shards", job.shards, "threads for the run-length sets")->check(CLI::PositiveNumber)->capture_default_str();
  add_format(runs);

  auto* tau = app.add_subcommand("tau", "greedy count table tau(1..n)");
  add_beta(tau, true);
  tau->add_option("--n", job.n, "largest s (default 10)");
  add_format(tau);

  auto* verify = app.add_subcommand("verify", "check formulas and invariants against enumeration");
  verify->add_option("--corpus", job.corpus, "corpus file: one [ID] SEQUENCE per line, # comments");
  verify->add_option("--seq", job.seq, "verify a single expansion instead of a corpus");
  verify->add_option("--n-range", job.n_range, "A..B (default 1..12)");
  verify->add_option("--n", job.n, "single n");
  verify->add_option("--shards", job.shards, "threads per (case, n)")->check(CLI::PositiveNumber)->capture_default_str();
  job.format = "json";
  verify->add_option("--format", job.format, "json report or plain summary")->check(CLI::IsMember({"plain", "json"}));
  verify->add_flag("--corrupt-formula", job.corrupt_formula, "harness self-test")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  // `verify` defaults to json; every other command to plain unless given.
  if (!app.got_subcommand(verify) && job.format == "json") {
    bool explicit_json = false;
    for (auto* sub : app.get_subcommands()) {
      if (auto* opt = sub->get_option_no_throw("--format"); opt && opt->count()) explicit_json = true;
    }
    if (!explicit_json) job.format = "plain";
  }

  try {
    if (app.got_subcommand(expand)) return cmd_expand(job);
    if (app.got_subcommand(validate)) return cmd_validate(job);
    if (app.got_subcommand(enumerate)) return cmd_enumerate(job);
    if (app.got_subcommand(classify)) return cmd_classify(job);
    if (app.got_subcommand(runs)) return cmd_runs(job);
    if (app.got_subcommand(tau)) return cmd_tau(job);
    if (app.got_subcommand(verify)) return cmd_verify(job);
  } catch (const Failure& f) {
    std::cerr << "error: " << bw_status_name(f.status);
    if (const std::size_t pos = bw_last_error_position()) std::cerr << '(' << pos << ')';
    std::cerr << ": " << bw_last_error() << '\n';
    return exit_code(f.status);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInternal;
}
