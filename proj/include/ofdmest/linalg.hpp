// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

#include "ofdmest/signal.hpp"

namespace ofdmest {

// Column-major dense complex matrix. Only the handful of operations the
// estimators need; sizes are K x N with N <= a dozen.
struct CMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cxd> data;  // column-major

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  cxd& at(std::size_t r, std::size_t c) { return data[c * rows + r]; }
  const cxd& at(std::size_t r, std::size_t c) const { return data[c * rows + r]; }

  ComplexVec column(std::size_t c) const {
    return ComplexVec(data.begin() + static_cast<std::ptrdiff_t>(c * rows),
                      data.begin() + static_cast<std::ptrdiff_t>((c + 1) * rows));
  }

  void append_column(const ComplexVec& v);
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A * x
ComplexVec matvec(const CMat& a, const ComplexVec& x);

// A^H * y
ComplexVec matvec_adjoint(const CMat& a, const ComplexVec& y);

// A^H * A (cols x cols Hermitian)
CMat gram(const CMat& a);

// Solves G x = b for Hermitian positive definite G via Cholesky.
// Throws SingularMatrixError when a pivot is not safely positive.
ComplexVec solve_hermitian(const CMat& g, const ComplexVec& b);

// 1-norm condition estimate ||G||_1 * ||G^{-1}||_1 computed by explicit
// inverse columns; intended for the small Gram systems only.
double cond_1norm(const CMat& g);

}  // namespace ofdmest
