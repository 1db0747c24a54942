#pragma once

#include <optional>
#include <utility>

#include "gibbslen/spectrum.hpp"

namespace gibbslen {

struct SolveConfig {
  // Absolute tolerance on the mean length; 0 selects the default
  // 1e-10 * max_length.
  double tol = 0.0;
  int max_iter = 200;
  // Optional starting bracket (lambda_lo, lambda_hi); it is expanded
  // automatically if it does not straddle the target.
  std::optional<std::pair<double, double>> bracket;
};

// Finds lambda with mean_length(lambda) = target. The map lambda -> L
// is monotone (dL/dlambda is the length variance), so an expanding
// bracket plus bisection always converges; Newton steps using the
// variance as the exact derivative are taken when they stay inside the
// bracket. Requires min_length < target < max_length and at least two
// distinct lengths.
double solve_lambda(const LengthSpectrum& spectrum, double target_length,
                    const SolveConfig& cfg = {});

}  // namespace gibbslen
