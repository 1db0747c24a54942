#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gibbslen/spectrum.hpp"

namespace gibbslen {

// Entry weights mult_k * exp(lambda * l_k): the stationary ray of the
// compromise function at its canonical scale. Plain doubles, so the
// exponents must stay within range; use GibbsState for log-domain work.
std::vector<double> gibbs_weights(const LengthSpectrum& spectrum,
                                  double lambda);

// Gradient of the compromise function in unnormalized weight
// coordinates: component j equals
//   lambda*(l_j/Z - sum_k l_k p_k / Z^2)
//     - ln(p_j/m_j)/Z + sum_k p_k ln(p_k/m_k) / Z^2
// with Z = sum_k p_k. Vanishes exactly on the ray p_k = c * m_k *
// exp(lambda*l_k), c > 0. Weights must be >= 1e-300.
std::vector<double> compromise_gradient(std::span<const double> weights,
                                        const LengthSpectrum& spectrum,
                                        double lambda);

// Hessian of the compromise function at the Gibbs point, with the first
// n entry coordinates varied while Z keeps the full spectrum's mass.
// diag_k = -Z_k/(p_k Z^2) < 0, offdiag = 1/Z^2 > 0, Z_k = sum_{j!=k} p_j.
struct HessianReport {
  std::size_t n = 0;
  std::vector<double> diag;
  double offdiag = 0.0;
  double z = 0.0;
  std::vector<double> zk;
  double det = 0.0;             // via the structured-determinant kernel
  double closed_form_det = 0.0; // (-Z)^(-n) (1 - sum_{k<=n} p_k/Z) / prod p_k
  // Z^(-n)/prod_{k<=n} p_k: the magnitude the closed form would have if
  // the mass factor were 1; reference scale for the n = m degeneracy.
  double natural_scale = 0.0;
  int sign = 0;  // sgn(det); 0 when |det| <= 1e-10 * natural_scale
};

// Requires 1 <= n <= m. n = m is not an error: the full determinant
// vanishes there (scale degeneracy of the stationary ray) and the
// report says so through sign == 0.
HessianReport hessian_at_gibbs(const LengthSpectrum& spectrum, double lambda,
                               std::size_t n);

struct VerifyOptions {
  double fd_step = 1e-6;   // central-difference step scale, in (0, 1e-2]
  int samples = 1000;      // random simplex points
  std::uint64_t seed = 0;  // sampling is reproducible given the seed
};

// Numerical certificate that the Gibbs point maximizes the compromise
// function: (a) the gradient vanishes there, (b) the analytic gradient
// matches central finite differences at random positive points, (c) the
// leading Hessian determinants alternate in sign, (d) no random simplex
// point beats log Z.
struct MaximumReport {
  double log_z = 0.0;

  double stationary_residual = 0.0;  // max |grad| at the Gibbs point
  double stationary_bound = 0.0;     // 1e-10 * (1 + |lambda| * l_max)
  bool stationary_ok = false;

  double gradient_fd_dev = 0.0;  // max |analytic - central fd|
  double gradient_fd_tol = 0.0;  // 1e-6 absolute
  bool gradient_ok = false;

  std::vector<int> hessian_signs;    // n = 1..m-1
  std::vector<double> hessian_dets;  // same range
  bool hessian_ok = false;           // each sign == (-1)^n

  double simplex_excess = 0.0;  // max F(Q) - log Z over the samples
  double simplex_tol = 0.0;     // 1e-12
  double gibbs_gap = 0.0;       // |F(gibbs P) - log Z|
  double gibbs_gap_tol = 0.0;   // 1e-12 * (1 + |log Z|)
  bool maximality_ok = false;

  bool all_ok() const {
    return stationary_ok && gradient_ok && hessian_ok && maximality_ok;
  }
};

MaximumReport verify_maximum(const LengthSpectrum& spectrum, double lambda,
                             const VerifyOptions& opts);

struct OracleResult {
  double best_value = 0.0;
  std::vector<double> best_point;
};

// Brute-force maximum of the compromise value over all compositions
// (i_1,...,i_m)/grid of the simplex; independent oracle for the
// maximality claim. Requires m <= 4.
OracleResult simplex_oracle_max(const LengthSpectrum& spectrum, double lambda,
                                int grid);

// Uniform draw from (0,1); fixed bit mapping so sequences are stable
// across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Uniform point on the (m-1)-simplex via exponential spacings.
std::vector<double> sample_simplex(std::mt19937_64& rng, std::size_t m);

}  // namespace gibbslen
