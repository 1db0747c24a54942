#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gibbslen/errors.hpp"
#include "gibbslen/gibbs.hpp"
#include "gibbslen/inverse.hpp"
#include "testutil.hpp"

using namespace gibbslen;
using testutil::make_spectrum;
using testutil::random_spectrum;
using testutil::uniform_in;

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;
}

TEST_CASE("worked inverse: L = 4/3 on lengths (1,2) gives -ln 2") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  const double lambda = solve_lambda(two, 4.0 / 3.0);
  CHECK(std::abs(lambda + kLn2) <= 1e-9);
}

TEST_CASE("midpoint target lands on lambda = 0") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  const double lambda = solve_lambda(two, 1.5);
  CHECK(std::abs(lambda) <= 1e-9);
  CHECK(std::abs(mean_length(GibbsState(two, lambda)) - 1.5) <= 2e-10);
}

TEST_CASE("targets at or beyond the length range are rejected") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  CHECK_THROWS_AS(solve_lambda(two, 1.0), TargetOutOfRange);
  CHECK_THROWS_AS(solve_lambda(two, 2.0), TargetOutOfRange);
  CHECK_THROWS_AS(solve_lambda(two, 2.5), TargetOutOfRange);
  CHECK_THROWS_AS(solve_lambda(two, 0.3), TargetOutOfRange);
}

TEST_CASE("single-length spectra are degenerate") {
  const LengthSpectrum one = make_spectrum({{3, 5}});
  CHECK_THROWS_AS(solve_lambda(one, 2.0), DegenerateSpectrum);
  CHECK_THROWS_AS(solve_lambda(one, 3.5), DegenerateSpectrum);
  // Every lambda already has L = 3; the conventional answer is 0.
  CHECK(solve_lambda(one, 3.0) == 0.0);
}

TEST_CASE("configuration validation") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  SolveConfig cfg;
  cfg.tol = -1.0;
  CHECK_THROWS_AS(solve_lambda(two, 1.5, cfg), InvalidArgument);
  cfg.tol = 0.0;
  cfg.max_iter = 0;
  CHECK_THROWS_AS(solve_lambda(two, 1.5, cfg), InvalidArgument);
  cfg.max_iter = 200;
  cfg.bracket = {{2.0, -2.0}};
  CHECK_THROWS_AS(solve_lambda(two, 1.5, cfg), InvalidArgument);
}

TEST_CASE("a tiny evaluation budget raises NoConvergence") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  SolveConfig cfg;
  cfg.max_iter = 2;
  cfg.tol = 1e-14;
  CHECK_THROWS_AS(solve_lambda(two, 4.0 / 3.0, cfg), NoConvergence);
}

TEST_CASE("user bracket is honored and expanded when needed") {
  const LengthSpectrum two = make_spectrum({{1, 1}, {2, 1}});
  SolveConfig cfg;
  cfg.bracket = {{-10.0, -5.0}};  // does not straddle -ln 2
  const double lambda = solve_lambda(two, 4.0 / 3.0, cfg);
  CHECK(std::abs(lambda + kLn2) <= 1e-9);

  cfg.bracket = {{-1.0, -0.5}};  // already straddles it
  CHECK(std::abs(solve_lambda(two, 4.0 / 3.0, cfg) + kLn2) <= 1e-9);
}

TEST_CASE("random round trips recover the mean length") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    // Lengths small enough that lambda0 in [-10, 10] never pins L onto a
    // range endpoint in floating point.
    const LengthSpectrum s = random_spectrum(rng, 2, 10, 0.5, 3.0, 0.5, 4.0);
    const double lambda0 = uniform_in(rng, -10.0, 10.0);
    const EnsembleStats st0 = ensemble_stats(GibbsState(s, lambda0));

    const double tol = 1e-10 * s.max_length();
    const double lambda1 = solve_lambda(s, st0.mean_length);
    const double l1 = mean_length(GibbsState(s, lambda1));
    CHECK(std::abs(l1 - st0.mean_length) <= tol);
    if (st0.var_length > 1e-8) {
      CHECK(std::abs(lambda1 - lambda0) <= 10.0 * tol / st0.var_length);
    }
  }
}

TEST_CASE("steep targets near the range edges still converge") {
  const LengthSpectrum s = make_spectrum({{1, 1}, {2, 1}, {8, 3}});
  for (double target : {1.001, 1.5, 7.9, 7.99}) {
    const double lambda = solve_lambda(s, target);
    CHECK(std::abs(mean_length(GibbsState(s, lambda)) - target) <=
          1e-10 * s.max_length());
  }
}
