#pragma once

#include <stdexcept>
#include <string>

namespace gibbslen {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Spectrum ingestion.
class ParseError : public Error { public: using Error::Error; };
class EmptySpectrum : public Error { public: using Error::Error; };
class NonPositiveLength : public Error { public: using Error::Error; };
class NonPositiveMultiplicity : public Error { public: using Error::Error; };
// A generated multiplicity no longer fits the floating format exactly.
class MultiplicityOverflow : public Error { public: using Error::Error; };

// Tail truncation: the geometric weight sum does not converge.
class DivergentSum : public Error { public: using Error::Error; };

// Distribution / weight-vector inputs.
class DimensionMismatch : public Error { public: using Error::Error; };
class NotOnSimplex : public Error { public: using Error::Error; };
class NonPositiveWeight : public Error { public: using Error::Error; };
class SubsetOutOfRange : public Error { public: using Error::Error; };

// Inverse solve.
class TargetOutOfRange : public Error { public: using Error::Error; };
class DegenerateSpectrum : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };

// Bad configuration values (tolerances, policies, grids).
class InvalidArgument : public Error { public: using Error::Error; };

}  // namespace gibbslen
