#include "gibbslen/detkernel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gibbslen/errors.hpp"

namespace gibbslen {

namespace {

void validate(const StructuredMatrix& mat) {
  if (mat.r.empty()) {
    throw InvalidArgument("structured matrix needs n >= 1");
  }
  for (double v : mat.r) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("structured matrix entries must be finite");
    }
  }
  if (!std::isfinite(mat.a) || !std::isfinite(mat.b)) {
    throw InvalidArgument("structured matrix entries must be finite");
  }
}

}  // namespace

PolyEval eval_root_product(std::span<const double> r, double x) {
  PolyEval out;
  out.value = 1.0;
  for (double ri : r) out.value *= ri - x;
  // f'(x) = -sum_i prod_{j != i} (r_j - x); the explicit sum keeps the
  // derivative finite at roots, unlike f(x) * sum 1/(r_i - x).
  double d = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j != i) prod *= r[j] - x;
    }
    d -= prod;
  }
  out.derivative = d;
  return out;
}

double structured_det(const StructuredMatrix& mat) {
  validate(mat);
  const double a = mat.a;
  const double b = mat.b;
  const double delta = 1e-8 * (std::abs(a) + std::abs(b) + 1.0);
  if (std::abs(a - b) > delta) {
    const double fa = eval_root_product(mat.r, a).value;
    const double fb = eval_root_product(mat.r, b).value;
    return (a * fb - b * fa) / (a - b);
  }
  const double x = 0.5 * (a + b);
  const PolyEval f = eval_root_product(mat.r, x);
  return f.value - x * f.derivative;
}

std::vector<double> materialize(const StructuredMatrix& mat) {
  validate(mat);
  const std::size_t n = mat.r.size();
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dense[i * n + j] = (i == j) ? mat.r[i] : (j > i ? mat.a : mat.b);
    }
  }
  return dense;
}

double dense_det_oracle(std::span<const double> rowmajor, std::size_t n) {
  if (n == 0) {
    throw InvalidArgument("determinant of an empty matrix");
  }
  if (n > 64) {
    throw InvalidArgument("dense oracle limited to n <= 64, got n = " +
                          std::to_string(n));
  }
  if (rowmajor.size() != n * n) {
    throw DimensionMismatch("expected " + std::to_string(n * n) +
                            " entries, got " + std::to_string(rowmajor.size()));
  }
  std::vector<double> m(rowmajor.begin(), rowmajor.end());
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(m[row * n + col]) > std::abs(m[pivot * n + col])) {
        pivot = row;
      }
    }
    if (m[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[pivot * n + j], m[col * n + j]);
      }
      sign = -sign;
    }
    const double inv = 1.0 / m[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = m[row * n + col] * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) {
        m[row * n + j] -= factor * m[col * n + j];
      }
    }
  }
  double det = sign;
  for (std::size_t k = 0; k < n; ++k) det *= m[k * n + k];
  return det;
}

}  // namespace gibbslen
