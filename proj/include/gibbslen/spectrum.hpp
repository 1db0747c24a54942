#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gibbslen {

struct SpectrumEntry {
  double length = 0.0;
  double mult = 0.0;
};

// Multiset of program lengths. An entry (l, m) stands for m programs of
// length l; multiplicities are reals so coarse-grained and weighted
// spectra fit the same model. Entries are kept sorted by strictly
// increasing length and duplicate lengths are merged on construction.
// Immutable after construction.
class LengthSpectrum {
public:
  // Sorts, merges duplicate lengths, and validates. Every length and
  // multiplicity must be finite and strictly positive; the result must
  // be non-empty.
  static LengthSpectrum from_entries(std::vector<SpectrumEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double length(std::size_t k) const { return entries_[k].length; }
  double mult(std::size_t k) const { return entries_[k].mult; }

  double min_length() const { return entries_.front().length; }
  double max_length() const { return entries_.back().length; }
  double total_mult() const;
  // Smallest spacing between adjacent lengths; +inf for a single entry.
  double min_gap() const;

private:
  LengthSpectrum() = default;
  std::vector<SpectrumEntry> entries_;
};

// Parses a spectrum from text. Two formats, auto-detected by the first
// non-blank byte: '{' selects the structured JSON form (an object with
// an "entries" list of {length, mult} records); anything else selects
// the line format "<length> <multiplicity>", with '#' starting a
// comment and blank lines ignored.
LengthSpectrum load_spectrum(std::string_view text);

// Canonical line-format serialization; parsing it back reproduces the
// spectrum exactly.
std::string to_text(const LengthSpectrum& spectrum);

// Spectrum of all binary strings of lengths 1..max_len: entry (l, 2^l).
// Multiplicities are exact powers of two; beyond 2^1023 they stop
// fitting a double and the call fails rather than rounding.
LengthSpectrum gen_binary_programs(int max_len);

// Truncation policy for spectra whose multiplicity grows like g^l.
struct TailPolicy {
  double growth_base = 2.0;  // g > 1
  double epsilon = 1e-6;     // relative tail tolerance, in (0, 1)
};

// Smallest N such that the geometric tail bound q^(N+1)/(1-q), with
// q = g*exp(lambda), falls below epsilon times the partial weight sum
// through N. Guarantees relative truncation error of Z below epsilon.
// Throws DivergentSum when q >= 1 (for g = 2 that is the T = 1
// boundary of base-2 ensembles).
std::int64_t tail_cutoff(const TailPolicy& policy, double lambda);

}  // namespace gibbslen
