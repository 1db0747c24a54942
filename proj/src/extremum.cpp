#include "gibbslen/extremum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gibbslen/detkernel.hpp"
#include "gibbslen/errors.hpp"
#include "gibbslen/gibbs.hpp"

namespace gibbslen {

namespace {

constexpr double kWeightFloor = 1e-300;

// Normalized form of the gradient: with t_k = lambda*l_k - ln(p_k/m_k),
// component j is (t_j - sum_k P_k t_k)/Z. Algebraically identical to the
// textbook expression but avoids Z^2, which over/underflows first.
std::vector<double> gradient_impl(std::span<const double> p,
                                  const LengthSpectrum& spectrum,
                                  double lambda) {
  const std::size_t m = p.size();
  double z = 0.0;
  for (double w : p) z += w;
  std::vector<double> t(m);
  for (std::size_t k = 0; k < m; ++k) {
    t[k] = lambda * spectrum.length(k) -
           (std::log(p[k]) - std::log(spectrum.mult(k)));
  }
  double mean_t = 0.0;
  for (std::size_t k = 0; k < m; ++k) mean_t += (p[k] / z) * t[k];
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = (t[k] - mean_t) / z;
  return g;
}

}  // namespace

std::vector<double> gibbs_weights(const LengthSpectrum& spectrum,
                                  double lambda) {
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  std::vector<double> p(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    p[k] = spectrum.mult(k) * std::exp(lambda * spectrum.length(k));
  }
  return p;
}

std::vector<double> compromise_gradient(std::span<const double> weights,
                                        const LengthSpectrum& spectrum,
                                        double lambda) {
  if (weights.size() != spectrum.size()) {
    throw DimensionMismatch("weight vector has " +
                            std::to_string(weights.size()) +
                            " entries, spectrum has " +
                            std::to_string(spectrum.size()));
  }
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < kWeightFloor) {
      throw NonPositiveWeight("weights must be finite and >= 1e-300");
    }
  }
  return gradient_impl(weights, spectrum, lambda);
}

HessianReport hessian_at_gibbs(const LengthSpectrum& spectrum, double lambda,
                               std::size_t n) {
  const std::size_t m = spectrum.size();
  if (n < 1 || n > m) {
    throw SubsetOutOfRange("need 1 <= n <= " + std::to_string(m) + ", got " +
                           std::to_string(n));
  }
  const std::vector<double> p = gibbs_weights(spectrum, lambda);
  double z = 0.0;
  for (double w : p) z += w;
  if (!std::isfinite(z) || z <= 0.0) {
    throw InvalidArgument(
        "Gibbs weights under/overflow at this lambda; reduce |lambda|*l");
  }

  HessianReport rep;
  rep.n = n;
  rep.z = z;
  rep.offdiag = 1.0 / (z * z);
  rep.diag.resize(n);
  rep.zk.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double zk = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != k) zk += p[j];
    }
    rep.zk[k] = zk;
    rep.diag[k] = -zk / (p[k] * z * z);
  }

  rep.det = structured_det({rep.diag, rep.offdiag, rep.offdiag});

  // Mass left outside the varied block; exactly 0 when n = m.
  double outside = 0.0;
  for (std::size_t k = n; k < m; ++k) outside += p[k];
  double prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) prod *= p[k];
  const double zpow = std::pow(z, -static_cast<double>(n));
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  // + 0.0 turns the -0.0 of the fully degenerate block into plain 0.
  rep.closed_form_det = parity * zpow * (outside / z) / prod + 0.0;
  rep.natural_scale = zpow / prod;
  rep.sign = (std::abs(rep.det) <= 1e-10 * rep.natural_scale)
                 ? 0
                 : (rep.det > 0.0 ? 1 : -1);
  return rep;
}

std::vector<double> sample_simplex(std::mt19937_64& rng, std::size_t m) {
  std::vector<double> q(m);
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    q[k] = -std::log(uniform01(rng));
    sum += q[k];
  }
  for (double& v : q) v /= sum;
  return q;
}

MaximumReport verify_maximum(const LengthSpectrum& spectrum, double lambda,
                             const VerifyOptions& opts) {
  if (!(opts.fd_step > 0.0) || opts.fd_step > 1e-2) {
    throw InvalidArgument("fd_step must lie in (0, 1e-2]");
  }
  if (opts.samples < 1) {
    throw InvalidArgument("samples must be positive");
  }
  const std::size_t m = spectrum.size();
  const GibbsState state(spectrum, lambda);

  MaximumReport rep;
  rep.log_z = state.log_z();

  // (a) Gradient at the Gibbs point. The stationary ray is scale-free, so
  // evaluate at the representable scale w_k = exp(lw_k - max lw), which
  // keeps Z >= 1 and the components well conditioned.
  {
    double hi = -std::numeric_limits<double>::infinity();
    for (double lw : state.log_weights()) hi = std::max(hi, lw);
    std::vector<double> w(m);
    for (std::size_t k = 0; k < m; ++k) {
      w[k] = std::exp(state.log_weights()[k] - hi);
    }
    const std::vector<double> g = compromise_gradient(w, spectrum, lambda);
    double residual = 0.0;
    for (double gj : g) residual = std::max(residual, std::abs(gj));
    rep.stationary_residual = residual;
    rep.stationary_bound =
        1e-10 * (1.0 + std::abs(lambda) * spectrum.max_length());
    rep.stationary_ok = residual <= rep.stationary_bound;
  }

  std::mt19937_64 rng(opts.seed);

  // (b) Analytic gradient against central differences of the compromise
  // value of the normalized weights, at 10 random positive points.
  {
    double dev = 0.0;
    auto value_at = [&](const std::vector<double>& p) {
      double sum = 0.0;
      for (double v : p) sum += v;
      std::vector<double> q(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) q[k] = p[k] / sum;
      return compromise_value(q, spectrum, lambda);
    };
    for (int pt = 0; pt < 10; ++pt) {
      std::vector<double> p(m);
      for (double& v : p) v = 0.1 + 9.9 * uniform01(rng);
      const std::vector<double> g = compromise_gradient(p, spectrum, lambda);
      for (std::size_t j = 0; j < m; ++j) {
        double h = opts.fd_step * (1.0 + std::abs(p[j]));
        h = std::min(h, 0.5 * p[j]);
        std::vector<double> hi = p, lo = p;
        hi[j] += h;
        lo[j] -= h;
        const double fd = (value_at(hi) - value_at(lo)) / (2.0 * h);
        dev = std::max(dev, std::abs(fd - g[j]));
      }
    }
    rep.gradient_fd_dev = dev;
    rep.gradient_fd_tol = 1e-6;
    rep.gradient_ok = dev <= rep.gradient_fd_tol;
  }

  // (c) Leading Hessian determinants alternate in sign; the full one is
  // excluded here because it vanishes by scale degeneracy.
  {
    rep.hessian_ok = true;
    for (std::size_t n = 1; n + 1 <= m; ++n) {
      const HessianReport h = hessian_at_gibbs(spectrum, lambda, n);
      rep.hessian_signs.push_back(h.sign);
      rep.hessian_dets.push_back(h.det);
      const int expected = (n % 2 == 0) ? 1 : -1;
      if (h.sign != expected) rep.hessian_ok = false;
    }
  }

  // (d) Random simplex points never beat log Z, and the Gibbs
  // probabilities attain it.
  {
    double excess = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < opts.samples; ++s) {
      const std::vector<double> q = sample_simplex(rng, m);
      excess = std::max(excess,
                        compromise_value(q, spectrum, lambda) - rep.log_z);
    }
    rep.simplex_excess = excess;
    rep.simplex_tol = 1e-12;
    rep.gibbs_gap = std::abs(
        compromise_value(state.probabilities(), spectrum, lambda) - rep.log_z);
    rep.gibbs_gap_tol = 1e-12 * (1.0 + std::abs(rep.log_z));
    rep.maximality_ok =
        excess <= rep.simplex_tol && rep.gibbs_gap <= rep.gibbs_gap_tol;
  }

  return rep;
}

OracleResult simplex_oracle_max(const LengthSpectrum& spectrum, double lambda,
                                int grid) {
  const std::size_t m = spectrum.size();
  if (m > 4) {
    throw SubsetOutOfRange(
        "grid oracle enumerates compositions; m <= 4 required, got m = " +
        std::to_string(m));
  }
  if (grid < 1) {
    throw InvalidArgument("grid must be positive");
  }
  if (!std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite");
  }

  OracleResult best;
  best.best_value = -std::numeric_limits<double>::infinity();
  std::vector<int> counts(m, 0);

  auto value_of = [&]() {
    double value = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (counts[k] == 0) continue;
      const double qk = static_cast<double>(counts[k]) / grid;
      value += qk * (lambda * spectrum.length(k) - std::log(qk) +
                     std::log(spectrum.mult(k)));
    }
    return value;
  };

  // Lexicographic walk over all compositions of `grid` into m parts.
  auto recurse = [&](auto&& self, std::size_t k, int remaining) -> void {
    if (k + 1 == m) {
      counts[k] = remaining;
      const double value = value_of();
      if (value > best.best_value) {
        best.best_value = value;
        best.best_point.assign(counts.begin(), counts.end());
        for (double& v : best.best_point) v /= grid;
      }
      return;
    }
    for (int i = 0; i <= remaining; ++i) {
      counts[k] = i;
      self(self, k + 1, remaining - i);
    }
  };
  recurse(recurse, 0, grid);
  return best;
}

}  // namespace gibbslen
