#include "betawords/digits.hpp"

#include <charconv>

#include "json.hpp"

namespace betawords {

namespace {

bool all_zero(const std::vector<Digit>& v) {
  return std::all_of(v.begin(), v.end(), [](Digit d) { return d == 0; });
}

std::string join(const std::vector<Digit>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Digit parse_one_digit(std::string_view token) {
  token = trim(token);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::InvalidInput, "malformed digit '" + std::string(token) + "'");
  }
  if (value > kMaxDigit) {
    throw Error(ErrorCode::InvalidInput, "digit " + std::to_string(value) + " exceeds 255");
  }
  return static_cast<Digit>(value);
}

}  // namespace

EventuallyPeriodic::EventuallyPeriodic(std::vector<Digit> preperiod, std::vector<Digit> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorCode::InvalidInput, "period must be nonempty");
}

EventuallyPeriodic EventuallyPeriodic::finite(std::vector<Digit> digits) {
  return EventuallyPeriodic(std::move(digits), {0});
}

bool EventuallyPeriodic::eventually_zero() const noexcept { return all_zero(period_); }

std::vector<Digit> EventuallyPeriodic::prefix(std::size_t n) const {
  std::vector<Digit> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (*this)[i];
  return out;
}

EventuallyPeriodic EventuallyPeriodic::shifted(std::size_t k) const {
  if (k <= preperiod_.size()) {
    return EventuallyPeriodic({preperiod_.begin() + static_cast<std::ptrdiff_t>(k), preperiod_.end()},
                              period_);
  }
  const std::size_t r = (k - preperiod_.size()) % period_.size();
  std::vector<Digit> rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
  rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
  return EventuallyPeriodic({}, std::move(rotated));
}

EventuallyPeriodic EventuallyPeriodic::canonical() const {
  std::vector<Digit> period = period_;
  const std::size_t q = period.size();
  for (std::size_t d = 1; d < q; ++d) {
    if (q % d) continue;
    bool repeats = true;
    for (std::size_t i = d; i < q && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) {
      period.resize(d);
      break;
    }
  }
  std::vector<Digit> pre = preperiod_;
  while (!pre.empty() && pre.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    pre.pop_back();
  }
  return EventuallyPeriodic(std::move(pre), std::move(period));
}

ExpansionOfOne::ExpansionOfOne(EventuallyPeriodic sequence, bool finite, std::size_t length)
    : sequence_(std::move(sequence)),
      modified_{sequence_},
      finite_(finite),
      length_(length) {
  if (finite_) {
    std::vector<Digit> block = sequence_.prefix(length_);
    block.back() -= 1;
    modified_.digits = EventuallyPeriodic({}, std::move(block));
  }
  eps_ = sequence_.prefix(kCached);
  star_ = modified_.digits.prefix(kCached);
}

ExpansionOfOne ExpansionOfOne::validate(const EventuallyPeriodic& candidate) {
  EventuallyPeriodic seq = candidate.canonical();
  const bool finite = seq.eventually_zero();
  if (finite && seq.preperiod().empty()) {
    throw Error(ErrorCode::InvalidInput, "expansion of 1 cannot be all zeros");
  }
  if (seq[0] == 0) {
    throw Error(ErrorCode::InvalidInput, "expansion of 1 must start with a nonzero digit");
  }
  const std::size_t length = finite ? seq.preperiod_length() : 0;
  if (finite && length == 1 && seq[0] == 1) {
    throw Error(ErrorCode::InvalidInput, "sequence 1 0^inf would force beta = 1");
  }
  // Shifts beyond preperiod + period repeat earlier ones.
  const std::size_t last_shift = seq.preperiod_length() + seq.period_length();
  for (std::size_t k = 1; k <= last_shift; ++k) {
    if (decide_lex_order(seq.shifted(k), seq) != LexOrder::Less) {
      throw Error(ErrorCode::NotSelfDominant,
                  "shift " + std::to_string(k) + " is not lexicographically below the sequence", k);
    }
  }
  return ExpansionOfOne(std::move(seq), finite, length);
}

ModifiedExpansion modified_expansion(const ExpansionOfOne& e) { return e.modified(); }

std::vector<std::size_t> nonzero_sequence(const ExpansionOfOne& e, std::size_t upto) {
  std::vector<std::size_t> out;
  const std::size_t last = e.is_finite() ? std::min(upto, e.length()) : upto;
  for (std::size_t pos = 1; pos <= last; ++pos) {
    if (e.digit(pos) != 0) out.push_back(pos);
  }
  return out;
}

std::size_t second_nonzero_position(const ExpansionOfOne& e) {
  if (e.is_integer_beta()) {
    throw Error(ErrorCode::IntegerBeta, "integer beta has no second nonzero digit");
  }
  // A nonzero digit appears within one preperiod plus one period.
  const auto& seq = e.sequence();
  const std::size_t bound = seq.preperiod_length() + seq.period_length() + 1;
  for (std::size_t pos = 2; pos <= bound; ++pos) {
    if (e.digit(pos) != 0) return pos;
  }
  throw Error(ErrorCode::InvalidInput, "no second nonzero digit");
}

std::size_t max_zero_run(const ExpansionOfOne& e, std::size_t n) {
  std::size_t best = 0;
  std::size_t current = 0;
  for (std::size_t pos = 1; pos <= n; ++pos) {
    current = e.star(pos) == 0 ? current + 1 : 0;
    best = std::max(best, current);
  }
  return best;
}

std::vector<Digit> parse_digits(std::string_view text) {
  text = trim(text);
  std::vector<Digit> out;
  if (text.empty()) return out;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw Error(ErrorCode::InvalidInput, "malformed digit string '" + std::string(text) + "'");
      }
      out.push_back(static_cast<Digit>(c - '0'));
    }
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_one_digit(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

// A zero period is a finite expansion written the long way.
void require_nonzero_period(const std::vector<Digit>& period) {
  if (std::all_of(period.begin(), period.end(), [](Digit d) { return d == 0; })) {
    throw Error(ErrorCode::InvalidInput, "period is all zeros; write the expansion as finite");
  }
}

}  // namespace

EventuallyPeriodic parse_sequence(std::string_view text) {
  text = trim(text);
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) {
    auto digits = parse_digits(text);
    if (digits.empty()) throw Error(ErrorCode::InvalidInput, "empty digit sequence");
    return EventuallyPeriodic::finite(std::move(digits));
  }
  if (text.find(';', semi + 1) != std::string_view::npos) {
    throw Error(ErrorCode::InvalidInput, "at most one ';' separates preperiod and period");
  }
  auto period = parse_digits(text.substr(semi + 1));
  if (period.empty()) throw Error(ErrorCode::InvalidInput, "period after ';' must be nonempty");
  require_nonzero_period(period);
  return EventuallyPeriodic(parse_digits(text.substr(0, semi)), std::move(period));
}

std::string format_sequence(const EventuallyPeriodic& seq) {
  if (seq.eventually_zero()) {
    std::vector<Digit> digits = seq.preperiod();
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
    return digits.empty() ? "0" : join(digits);
  }
  return join(seq.preperiod()) + ";" + join(seq.period());
}

std::string format_expansion(const ExpansionOfOne& e) { return format_sequence(e.sequence()); }

EventuallyPeriodic sequence_from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + ex.what());
  }
  auto digits_of = [](const nlohmann::json& arr) {
    if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, "expected a JSON array of digits");
    std::vector<Digit> out;
    for (const auto& v : arr) {
      if (!v.is_number_unsigned() || v.get<unsigned>() > kMaxDigit) {
        throw Error(ErrorCode::InvalidInput, "digits must be integers in [0, 255]");
      }
      out.push_back(static_cast<Digit>(v.get<unsigned>()));
    }
    return out;
  };
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "expected a JSON object");
  if (doc.contains("finite")) {
    auto digits = digits_of(doc["finite"]);
    if (digits.empty()) throw Error(ErrorCode::InvalidInput, "empty digit sequence");
    return EventuallyPeriodic::finite(std::move(digits));
  }
  if (doc.contains("period")) {
    auto period = digits_of(doc["period"]);
    if (period.empty()) throw Error(ErrorCode::InvalidInput, "period must be nonempty");
    require_nonzero_period(period);
    std::vector<Digit> pre = doc.contains("preperiod") ? digits_of(doc["preperiod"]) : std::vector<Digit>{};
    return EventuallyPeriodic(std::move(pre), std::move(period));
  }
  throw Error(ErrorCode::InvalidInput, "expected key 'finite' or 'period'");
}

std::string expansion_to_json(const ExpansionOfOne& e) {
  nlohmann::ordered_json doc;
  if (e.is_finite()) {
    doc["finite"] = e.sequence().prefix(e.length());
  } else {
    doc["preperiod"] = e.sequence().preperiod();
    doc["period"] = e.sequence().period();
  }
  return doc.dump();
}

std::string format_digits(std::span<const Digit> digits, Digit alphabet_max) {
  std::string out;
  if (alphabet_max <= 9) {
    out.reserve(digits.size());
    for (Digit d : digits) out += static_cast<char>('0' + d);
    return out;
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

}  // namespace betawords
