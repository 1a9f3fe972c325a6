// SPDX-License-Identifier: Apache-2.0
#include "ofdmest/linalg.hpp"

#include <cmath>

namespace ofdmest {

void CMat::append_column(const ComplexVec& v) {
  if (rows == 0) rows = v.size();
  if (v.size() != rows) throw std::invalid_argument("CMat: column length mismatch");
  data.insert(data.end(), v.begin(), v.end());
  ++cols;
}

ComplexVec matvec(const CMat& a, const ComplexVec& x) {
  if (x.size() != a.cols) throw std::invalid_argument("matvec: size mismatch");
  ComplexVec out(a.rows, cxd(0.0, 0.0));
  for (std::size_t c = 0; c < a.cols; ++c) {
    const cxd xc = x[c];
    const cxd* col = a.data.data() + c * a.rows;
    for (std::size_t r = 0; r < a.rows; ++r) out[r] += col[r] * xc;
  }
  return out;
}

ComplexVec matvec_adjoint(const CMat& a, const ComplexVec& y) {
  if (y.size() != a.rows) throw std::invalid_argument("matvec_adjoint: size mismatch");
  ComplexVec out(a.cols);
  for (std::size_t c = 0; c < a.cols; ++c) {
    const cxd* col = a.data.data() + c * a.rows;
    cxd acc(0.0, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r) acc += std::conj(col[r]) * y[r];
    out[c] = acc;
  }
  return out;
}

CMat gram(const CMat& a) {
  CMat g(a.cols, a.cols);
  for (std::size_t i = 0; i < a.cols; ++i) {
    const cxd* ci = a.data.data() + i * a.rows;
    for (std::size_t j = i; j < a.cols; ++j) {
      const cxd* cj = a.data.data() + j * a.rows;
      cxd acc(0.0, 0.0);
      for (std::size_t r = 0; r < a.rows; ++r) acc += std::conj(ci[r]) * cj[r];
      g.at(i, j) = acc;
      g.at(j, i) = std::conj(acc);
    }
  }
  return g;
}

namespace {

// Lower Cholesky factor; throws if not safely positive definite.
CMat cholesky(const CMat& g) {
  const std::size_t n = g.rows;
  if (g.cols != n) throw std::invalid_argument("cholesky: not square");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(g.at(i, i)));
  CMat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      cxd acc = g.at(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l.at(i, k) * std::conj(l.at(j, k));
      if (i == j) {
        double d = acc.real();
        if (!(d > scale * 1e-15) || !std::isfinite(d)) {
          throw SingularMatrixError("cholesky: matrix not positive definite");
        }
        l.at(j, j) = cxd(std::sqrt(d), 0.0);
      } else {
        l.at(i, j) = acc / l.at(j, j).real();
      }
    }
  }
  return l;
}

ComplexVec solve_with_factor(const CMat& l, const ComplexVec& b) {
  const std::size_t n = l.rows;
  ComplexVec x(b);
  for (std::size_t i = 0; i < n; ++i) {
    cxd acc = x[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l.at(i, k) * x[k];
    x[i] = acc / l.at(i, i).real();
  }
  for (std::size_t ii = n; ii-- > 0;) {
    cxd acc = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l.at(k, ii)) * x[k];
    x[ii] = acc / l.at(ii, ii).real();
  }
  return x;
}

double norm1(const CMat& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) s += std::abs(a.at(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexVec solve_hermitian(const CMat& g, const ComplexVec& b) {
  if (b.size() != g.rows) throw std::invalid_argument("solve_hermitian: size mismatch");
  return solve_with_factor(cholesky(g), b);
}

double cond_1norm(const CMat& g) {
  const std::size_t n = g.rows;
  CMat l = cholesky(g);
  CMat inv(n, n);
  ComplexVec e(n, cxd(0.0, 0.0));
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = cxd(1.0, 0.0);
    ComplexVec col = solve_with_factor(l, e);
    for (std::size_t r = 0; r < n; ++r) inv.at(r, c) = col[r];
    e[c] = cxd(0.0, 0.0);
  }
  return norm1(g) * norm1(inv);
}

}  // namespace ofdmest
