#pragma once

#include <span>
#include <vector>

#include "gibbslen/spectrum.hpp"

namespace gibbslen {

// Temperature bookkeeping around lambda = -beta = -1/(kconst*T).
// In base-2 mode the map is lambda = -ln(2)/T instead, so that the
// Gibbs weights read 2^(-l/T) and T plays the compression-rate role
// for binary-program spectra.
class TemperatureParam {
public:
  static TemperatureParam from_lambda(double lambda, double kconst = 1.0,
                                      bool base2 = false);
  // temperature must be finite and nonzero.
  static TemperatureParam from_temperature(double temperature,
                                           double kconst = 1.0,
                                           bool base2 = false);

  double lambda() const { return lambda_; }
  double beta() const { return -lambda_; }
  double kconst() const { return kconst_; }
  bool base2() const { return base2_; }
  // +inf at lambda == 0 (the beta -> 0 limit).
  double temperature() const;

private:
  TemperatureParam(double lambda, double kconst, bool base2)
      : lambda_(lambda), kconst_(kconst), base2_(base2) {}
  double lambda_;
  double kconst_;
  bool base2_;
};

// Ensemble over a spectrum at fixed lambda. The weight of entry k is
// mult_k * exp(lambda * l_k); all weight arithmetic stays in the log
// domain and probabilities come out of a log-sum-exp normalization,
// so no finite lambda*l overflows. Immutable.
class GibbsState {
public:
  GibbsState(LengthSpectrum spectrum, double lambda);

  const LengthSpectrum& spectrum() const { return spectrum_; }
  double lambda() const { return lambda_; }
  double log_z() const { return log_z_; }
  // lambda*l_k + ln(mult_k) per entry.
  std::span<const double> log_weights() const { return log_weights_; }
  // Per-entry probabilities, summing to 1.
  std::span<const double> probabilities() const { return probabilities_; }

private:
  LengthSpectrum spectrum_;
  double lambda_;
  std::vector<double> log_weights_;
  double log_z_;
  std::vector<double> probabilities_;
};

inline GibbsState gibbs_state(LengthSpectrum spectrum, double lambda) {
  return GibbsState(std::move(spectrum), lambda);
}

struct EnsembleStats {
  double mean_length = 0.0;
  double entropy = 0.0;     // natural-log units, per-program counting
  double compromise = 0.0;  // lambda * L + S
  double log_z = 0.0;
  double var_length = 0.0;
};

double mean_length(const GibbsState& state);

// Shannon entropy over programs: an entry with multiplicity m and entry
// probability Q holds m programs of probability Q/m each, contributing
// -Q*(ln Q - ln m).
double entropy(const GibbsState& state);

EnsembleStats ensemble_stats(const GibbsState& state);

// Compromise value lambda*L + S of an arbitrary entry distribution.
// probs must sit on the simplex within 1e-9 (it is renormalized before
// use); 0*ln(0) counts as 0. Maximized, over all distributions, by the
// Gibbs probabilities, where it equals log Z.
double compromise_value(std::span<const double> probs,
                        const LengthSpectrum& spectrum, double lambda);

}  // namespace gibbslen
