#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gibbslen/detkernel.hpp"
#include "gibbslen/errors.hpp"
#include "testutil.hpp"

using namespace gibbslen;
using testutil::uniform_in;

TEST_CASE("root product value and derivative") {
  const std::vector<double> r23{2.0, 3.0};
  const PolyEval e = eval_root_product(r23, 0.0);
  CHECK(e.value == 6.0);
  CHECK(e.derivative == -5.0);

  // Triple root: value and derivative both vanish.
  const std::vector<double> ones{1.0, 1.0, 1.0};
  const PolyEval z = eval_root_product(ones, 1.0);
  CHECK(z.value == 0.0);
  CHECK(z.derivative == 0.0);

  const std::vector<double> single{4.5};
  const PolyEval lin = eval_root_product(single, 1.25);
  CHECK(lin.value == 3.25);
  CHECK(lin.derivative == -1.0);
}

TEST_CASE("structured determinant worked values") {
  CHECK(structured_det({{2.0, 3.0}, 1.0, 0.0}) == 6.0);
  CHECK(structured_det({{2.0, 3.0, 5.0}, 0.0, 0.0}) == 30.0);
  CHECK(structured_det({{1.0, 1.0, 1.0}, 1.0, 1.0}) == 0.0);
  CHECK(structured_det({{4.0}, 9.0, 9.0}) == 4.0);
}

TEST_CASE("structured determinant input validation") {
  CHECK_THROWS_AS(structured_det({{}, 1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(
      structured_det({{std::numeric_limits<double>::infinity()}, 1.0, 0.0}),
      InvalidArgument);
}

TEST_CASE("dense oracle basics") {
  const std::vector<double> upper{2.0, 1.0, 0.0, 3.0};
  CHECK(dense_det_oracle(upper, 2) == 6.0);

  std::vector<double> eye(25, 0.0);
  for (int i = 0; i < 5; ++i) eye[i * 5 + i] = 1.0;
  CHECK(dense_det_oracle(eye, 5) == 1.0);

  // A row swap flips the sign.
  const std::vector<double> swapped{0.0, 1.0, 1.0, 0.0};
  CHECK(dense_det_oracle(swapped, 2) == -1.0);

  const std::vector<double> singular{1.0, 2.0, 2.0, 4.0};
  CHECK(dense_det_oracle(singular, 2) == 0.0);

  CHECK_THROWS_AS(dense_det_oracle(std::vector<double>{}, 0), InvalidArgument);
  CHECK_THROWS_AS(dense_det_oracle(std::vector<double>(65 * 65, 1.0), 65),
                  InvalidArgument);
  CHECK_THROWS_AS(dense_det_oracle(std::vector<double>{1.0, 2.0}, 2),
                  DimensionMismatch);
}

TEST_CASE("structured determinant of a materialized example") {
  const StructuredMatrix mat{{2.0, 3.0, 5.0}, 1.0, 4.0};
  const double dense = dense_det_oracle(materialize(mat), 3);
  const double structured = structured_det(mat);
  CHECK(std::abs(structured - dense) <= 1e-10 * (1.0 + std::abs(dense)));
}

TEST_CASE("closed form matches the LU oracle on random matrices") {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = testutil::uniform_index(rng, 1, 8);
    StructuredMatrix mat;
    mat.r.resize(n);
    for (double& v : mat.r) v = uniform_in(rng, -5.0, 5.0);
    mat.a = uniform_in(rng, -5.0, 5.0);
    mat.b = uniform_in(rng, -5.0, 5.0);

    const double dense = dense_det_oracle(materialize(mat), n);
    const double structured = structured_det(mat);
    CHECK(std::abs(structured - dense) <= 1e-10 * (1.0 + std::abs(dense)));
  }
}

TEST_CASE("transpose symmetry: swapping a and b preserves the determinant") {
  std::mt19937_64 rng(616);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = testutil::uniform_index(rng, 1, 8);
    StructuredMatrix mat;
    mat.r.resize(n);
    for (double& v : mat.r) v = uniform_in(rng, -5.0, 5.0);
    mat.a = uniform_in(rng, -5.0, 5.0);
    mat.b = uniform_in(rng, -5.0, 5.0);
    const StructuredMatrix swapped{mat.r, mat.b, mat.a};
    const double d1 = structured_det(mat);
    const double d2 = structured_det(swapped);
    CHECK(testutil::rel_close(d1, d2, 1e-13));
  }
}

TEST_CASE("ratio form converges to the limit form as a approaches b") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testutil::uniform_index(rng, 1, 8);
    std::vector<double> r(n);
    for (double& v : r) v = uniform_in(rng, -5.0, 5.0);
    const double a = uniform_in(rng, -5.0, 5.0);

    const PolyEval f = eval_root_product(r, a);
    const double limit = f.value - a * f.derivative;
    for (int k = 4; k <= 10; ++k) {
      const double eps = std::pow(10.0, -k);
      const double det = structured_det({r, a, a + eps});
      const double scale = 1.0 + std::abs(limit);
      CHECK(std::abs(det - limit) <= 1000.0 * eps * scale + 1e-12 * scale);
    }
  }
}
