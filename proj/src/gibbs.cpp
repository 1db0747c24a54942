#include "gibbslen/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gibbslen/errors.hpp"
#include "gibbslen/format.hpp"

namespace gibbslen {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

double log_sum_exp(std::span<const double> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

}  // namespace

TemperatureParam TemperatureParam::from_lambda(double lambda, double kconst,
                                               bool base2) {
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  if (!std::isfinite(kconst) || kconst <= 0.0) {
    throw InvalidArgument("kconst must be finite and positive");
  }
  return TemperatureParam(lambda, kconst, base2);
}

TemperatureParam TemperatureParam::from_temperature(double temperature,
                                                    double kconst,
                                                    bool base2) {
  if (!std::isfinite(temperature) || temperature == 0.0) {
    throw InvalidArgument("temperature must be finite and nonzero");
  }
  if (!std::isfinite(kconst) || kconst <= 0.0) {
    throw InvalidArgument("kconst must be finite and positive");
  }
  const double lambda =
      base2 ? -kLn2 / temperature : -1.0 / (kconst * temperature);
  return TemperatureParam(lambda, kconst, base2);
}

double TemperatureParam::temperature() const {
  if (lambda_ == 0.0) return std::numeric_limits<double>::infinity();
  return base2_ ? -kLn2 / lambda_ : -1.0 / (kconst_ * lambda_);
}

GibbsState::GibbsState(LengthSpectrum spectrum, double lambda)
    : spectrum_(std::move(spectrum)), lambda_(lambda) {
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  const std::size_t m = spectrum_.size();
  log_weights_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    log_weights_[k] = lambda_ * spectrum_.length(k) + std::log(spectrum_.mult(k));
  }
  log_z_ = log_sum_exp(log_weights_);
  probabilities_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    probabilities_[k] = std::exp(log_weights_[k] - log_z_);
  }
}

double mean_length(const GibbsState& state) {
  double acc = 0.0;
  const auto probs = state.probabilities();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k] * state.spectrum().length(k);
  }
  return acc;
}

double entropy(const GibbsState& state) {
  double acc = 0.0;
  const auto probs = state.probabilities();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double q = probs[k];
    if (q > 0.0) {
      acc -= q * (std::log(q) - std::log(state.spectrum().mult(k)));
    }
  }
  return acc;
}

EnsembleStats ensemble_stats(const GibbsState& state) {
  EnsembleStats out;
  out.mean_length = mean_length(state);
  out.entropy = entropy(state);
  out.compromise = state.lambda() * out.mean_length + out.entropy;
  out.log_z = state.log_z();
  double var = 0.0;
  const auto probs = state.probabilities();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double d = state.spectrum().length(k) - out.mean_length;
    var += probs[k] * d * d;
  }
  out.var_length = var;
  return out;
}

double compromise_value(std::span<const double> probs,
                        const LengthSpectrum& spectrum, double lambda) {
  if (probs.size() != spectrum.size()) {
    throw DimensionMismatch("distribution has " + std::to_string(probs.size()) +
                            " entries, spectrum has " +
                            std::to_string(spectrum.size()));
  }
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  double sum = 0.0;
  for (double q : probs) {
    if (!std::isfinite(q) || q < 0.0) {
      throw NotOnSimplex("distribution entries must be finite and >= 0");
    }
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NotOnSimplex("distribution sums to " + fmt17(sum) +
                       ", more than 1e-9 away from 1");
  }
  double value = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double q = probs[k] / sum;
    if (q > 0.0) {
      value += q * (lambda * spectrum.length(k) - std::log(q) +
                    std::log(spectrum.mult(k)));
    }
  }
  return value;
}

}  // namespace gibbslen
