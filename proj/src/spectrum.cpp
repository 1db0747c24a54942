#include "gibbslen/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include <json.hpp>

#include "gibbslen/errors.hpp"
#include "gibbslen/format.hpp"

namespace gibbslen {

namespace {

void validate_entry(double length, double mult, const std::string& where) {
  if (!std::isfinite(length) || length <= 0.0) {
    throw NonPositiveLength("length must be finite and positive" + where +
                            " (got " + fmt17(length) + ")");
  }
  if (!std::isfinite(mult) || mult <= 0.0) {
    throw NonPositiveMultiplicity("multiplicity must be finite and positive" +
                                  where + " (got " + fmt17(mult) + ")");
  }
}

LengthSpectrum parse_line_format(std::string_view text) {
  std::vector<SpectrumEntry> entries;
  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::string buf(line);
    const char* s = buf.c_str();
    char* end = nullptr;
    double length = std::strtod(s, &end);
    if (end == s) {
      // Nothing parsed: blank (or comment-only) lines are fine, junk is not.
      while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
      if (*s == '\0') continue;
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected <length> <multiplicity>");
    }
    s = end;
    double mult = std::strtod(s, &end);
    if (end == s) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": missing multiplicity");
    }
    s = end;
    while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
    if (*s != '\0') {
      throw ParseError("line " + std::to_string(lineno) +
                       ": trailing characters after multiplicity");
    }
    validate_entry(length, mult, " at line " + std::to_string(lineno));
    entries.push_back({length, mult});
  }
  return LengthSpectrum::from_entries(std::move(entries));
}

LengthSpectrum parse_structured_format(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structured spectrum: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    throw ParseError("structured spectrum: expected {\"entries\": [...]}");
  }
  std::vector<SpectrumEntry> entries;
  for (const auto& rec : doc["entries"]) {
    if (!rec.is_object() || !rec.contains("length") || !rec.contains("mult") ||
        !rec["length"].is_number() || !rec["mult"].is_number()) {
      throw ParseError(
          "structured spectrum: each entry needs numeric length and mult");
    }
    double length = rec["length"].get<double>();
    double mult = rec["mult"].get<double>();
    validate_entry(length, mult, "");
    entries.push_back({length, mult});
  }
  return LengthSpectrum::from_entries(std::move(entries));
}

}  // namespace

LengthSpectrum LengthSpectrum::from_entries(
    std::vector<SpectrumEntry> entries) {
  if (entries.empty()) {
    throw EmptySpectrum("spectrum has no entries");
  }
  for (const auto& e : entries) {
    validate_entry(e.length, e.mult, "");
  }
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return a.length < b.length;
            });
  std::vector<SpectrumEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().length == e.length) {
      merged.back().mult += e.mult;
      if (!std::isfinite(merged.back().mult)) {
        throw MultiplicityOverflow("merged multiplicity overflows at length " +
                                   fmt17(e.length));
      }
    } else {
      merged.push_back(e);
    }
  }
  LengthSpectrum s;
  s.entries_ = std::move(merged);
  return s;
}

double LengthSpectrum::total_mult() const {
  double total = 0.0;
  for (const auto& e : entries_) total += e.mult;
  return total;
}

double LengthSpectrum::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    gap = std::min(gap, entries_[k].length - entries_[k - 1].length);
  }
  return gap;
}

LengthSpectrum load_spectrum(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw EmptySpectrum("spectrum input is blank");
  }
  if (text[first] == '{') {
    return parse_structured_format(text);
  }
  return parse_line_format(text);
}

std::string to_text(const LengthSpectrum& spectrum) {
  std::string out;
  for (const auto& e : spectrum.entries()) {
    out += fmt17(e.length);
    out += ' ';
    out += fmt17(e.mult);
    out += '\n';
  }
  return out;
}

LengthSpectrum gen_binary_programs(int max_len) {
  if (max_len < 1) {
    throw EmptySpectrum("max_len must be at least 1");
  }
  if (max_len > 1023) {
    throw MultiplicityOverflow(
        "2^l is not an exact double beyond l = 1023 (got max_len = " +
        std::to_string(max_len) + ")");
  }
  std::vector<SpectrumEntry> entries;
  entries.reserve(static_cast<std::size_t>(max_len));
  for (int l = 1; l <= max_len; ++l) {
    entries.push_back({static_cast<double>(l), std::ldexp(1.0, l)});
  }
  return LengthSpectrum::from_entries(std::move(entries));
}

std::int64_t tail_cutoff(const TailPolicy& policy, double lambda) {
  if (!std::isfinite(policy.growth_base) || policy.growth_base <= 1.0) {
    throw InvalidArgument("tail policy needs growth_base > 1");
  }
  if (!std::isfinite(policy.epsilon) || policy.epsilon <= 0.0 ||
      policy.epsilon >= 1.0) {
    throw InvalidArgument("tail policy needs epsilon in (0, 1)");
  }
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  const double q = policy.growth_base * std::exp(lambda);
  if (!(q < 1.0)) {
    throw DivergentSum("weight sum diverges: g*exp(lambda) = " + fmt17(q) +
                       " >= 1 (lambda >= -ln g)");
  }
  const double eps = policy.epsilon;
  // tail(N) = q^(N+1)/(1-q) < eps * partial(N), partial(N) = sum_{l<=N} q^l.
  auto certified = [&](double n) {
    const double qn = std::pow(q, n);
    const double tail = qn * q / (1.0 - q);
    const double partial = q * (1.0 - qn) / (1.0 - q);
    return tail < eps * partial;
  };
  // Closed form of the bound, then a local scan pins the smallest N.
  double guess = std::ceil(std::log(eps / (1.0 + eps)) / std::log(q));
  if (!std::isfinite(guess) || guess < 1.0) guess = 1.0;
  while (!certified(guess)) guess += 1.0;
  while (guess > 1.0 && certified(guess - 1.0)) guess -= 1.0;
  return static_cast<std::int64_t>(guess);
}

}  // namespace gibbslen
