#include "gibbslen/inverse.hpp"

#include <algorithm>
#include <cmath>

#include "gibbslen/errors.hpp"
#include "gibbslen/format.hpp"
#include "gibbslen/gibbs.hpp"

namespace gibbslen {

namespace {

struct LengthAndVar {
  double mean = 0.0;
  double var = 0.0;
};

LengthAndVar eval(const LengthSpectrum& spectrum, double lambda) {
  const EnsembleStats st = ensemble_stats(GibbsState(spectrum, lambda));
  return {st.mean_length, st.var_length};
}

}  // namespace

double solve_lambda(const LengthSpectrum& spectrum, double target_length,
                    const SolveConfig& cfg) {
  if (!std::isfinite(target_length)) {
    throw InvalidArgument("target length must be finite");
  }
  if (cfg.tol < 0.0 || !std::isfinite(cfg.tol)) {
    throw InvalidArgument("tol must be nonnegative");
  }
  if (cfg.max_iter < 1) {
    throw InvalidArgument("max_iter must be positive");
  }
  const double tol =
      cfg.tol > 0.0 ? cfg.tol : 1e-10 * spectrum.max_length();

  if (spectrum.size() == 1) {
    if (target_length == spectrum.min_length()) return 0.0;
    throw DegenerateSpectrum("spectrum has a single length " +
                             fmt17(spectrum.min_length()) +
                             "; no lambda reaches L = " + fmt17(target_length));
  }
  if (!(target_length > spectrum.min_length() &&
        target_length < spectrum.max_length())) {
    throw TargetOutOfRange("target L = " + fmt17(target_length) +
                           " outside the open range (" +
                           fmt17(spectrum.min_length()) + ", " +
                           fmt17(spectrum.max_length()) + ")");
  }

  // |lambda| beyond this drives exp(lambda*l) out of double range.
  const double cap = 700.0 / spectrum.max_length();

  double lo = -1.0, hi = 1.0;
  if (cfg.bracket) {
    lo = cfg.bracket->first;
    hi = cfg.bracket->second;
    if (!(lo < hi)) {
      throw InvalidArgument("bracket must be ordered (lo < hi)");
    }
  }
  lo = std::max(lo, -cap);
  hi = std::min(hi, cap);

  int evals_left = cfg.max_iter;
  auto next_eval = [&](double lambda) {
    if (evals_left-- <= 0) {
      throw NoConvergence("no convergence within max_iter = " +
                          std::to_string(cfg.max_iter));
    }
    return eval(spectrum, lambda);
  };

  // L is nondecreasing in lambda, so push the failing endpoint outward
  // (doubling) until [lo, hi] straddles the target.
  LengthAndVar at_lo = next_eval(lo);
  while (at_lo.mean > target_length) {
    if (lo <= -cap) {
      throw NoConvergence("target L = " + fmt17(target_length) +
                          " not bracketed above lambda = " + fmt17(-cap));
    }
    hi = lo;
    lo = std::max(lo < 0.0 ? 2.0 * lo : -1.0, -cap);
    at_lo = next_eval(lo);
  }
  LengthAndVar at_hi = next_eval(hi);
  while (at_hi.mean < target_length) {
    if (hi >= cap) {
      throw NoConvergence("target L = " + fmt17(target_length) +
                          " not bracketed below lambda = " + fmt17(cap));
    }
    lo = hi;
    hi = std::min(hi > 0.0 ? 2.0 * hi : 1.0, cap);
    at_hi = next_eval(hi);
  }
  if (std::abs(at_lo.mean - target_length) <= tol) return lo;
  if (std::abs(at_hi.mean - target_length) <= tol) return hi;

  // Bisection, with a Newton step (variance is the exact derivative
  // dL/dlambda) whenever it lands strictly inside the bracket.
  double lambda = 0.5 * (lo + hi);
  for (;;) {
    const LengthAndVar at = next_eval(lambda);
    if (std::abs(at.mean - target_length) <= tol) return lambda;
    if (at.mean < target_length) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    double candidate = lambda - (at.mean - target_length) / at.var;
    if (!(at.var > 0.0) || !std::isfinite(candidate) || candidate <= lo ||
        candidate >= hi) {
      candidate = 0.5 * (lo + hi);
    }
    lambda = candidate;
  }
}

}  // namespace gibbslen
