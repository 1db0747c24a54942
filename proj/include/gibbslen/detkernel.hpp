#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gibbslen {

// n x n matrix with diagonal r, the constant a everywhere strictly
// above the diagonal and the constant b everywhere strictly below it.
struct StructuredMatrix {
  std::vector<double> r;
  double a = 0.0;
  double b = 0.0;
};

struct PolyEval {
  double value = 0.0;       // prod_i (r_i - x)
  double derivative = 0.0;  // d/dx prod_i (r_i - x)
};

// Evaluates the product and its derivative by the exact product rule,
// which stays correct at repeated roots where value/derivative both
// vanish. O(n^2).
PolyEval eval_root_product(std::span<const double> r, double x);

// Closed-form determinant (a*f(b) - b*f(a))/(a - b) with
// f(x) = prod (r_i - x). When |a - b| <= 1e-8 * (|a| + |b| + 1) the
// ratio cancels catastrophically, so the a -> b limit form
// f(x) - x*f'(x) is used at the midpoint instead.
double structured_det(const StructuredMatrix& mat);

// Row-major dense copy of the structured matrix.
std::vector<double> materialize(const StructuredMatrix& mat);

// Determinant by elimination with partial pivoting and exact tracking
// of row-swap signs; independent cross-check for structured_det.
// Requires 1 <= n <= 64 and rowmajor.size() == n*n.
double dense_det_oracle(std::span<const double> rowmajor, std::size_t n);

}  // namespace gibbslen
