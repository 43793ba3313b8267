#pragma once

#include <cstddef>
#include <vector>

#include "lw/bigfloat.hpp"
#include "lw/errors.hpp"

namespace lw {

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols, const T& init = T{})
      : rows_(rows), cols_(cols), a_(rows * cols, init) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<size_t>& row_idx,
                   const std::vector<size_t>& col_idx) const {
    Matrix s(row_idx.size(), col_idx.size());
    for (size_t i = 0; i < row_idx.size(); ++i)
      for (size_t j = 0; j < col_idx.size(); ++j)
        s(i, j) = (*this)(row_idx[i], col_idx[j]);
    return s;
  }

 private:
  size_t rows_, cols_;
  std::vector<T> a_;
};

// Exact determinant over any commutative ring with +, *, unary -. Bitmask
// dynamic program over column subsets (Laplace expansion along the last used
// row); 2^d states, so d is capped.
template <class T>
T det_laplace(const Matrix<T>& m, const T& one) {
  require(m.rows() == m.cols(), "det: matrix not square");
  const size_t d = m.rows();
  require(d <= 20, "det: dimension over enumeration limit");
  if (d == 0) return one;

  std::vector<T> dp(size_t{1} << d, T{});
  dp[0] = one;
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    const size_t k = static_cast<size_t>(__builtin_popcountll(mask));
    T acc{};
    size_t pos = 0;
    for (size_t j = 0; j < d; ++j) {
      if (!(mask >> j & 1)) continue;
      const T contrib = m(k - 1, j) * dp[mask ^ (size_t{1} << j)];
      // Sign of expanding row k-1 against the pos-th smallest column in mask.
      if ((k - 1 + pos) % 2 == 0)
        acc = acc + contrib;
      else
        acc = acc - contrib;
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp.back();
}

// Dense LU with partial pivoting at the operand precision, kept around so
// several right-hand sides (or refinement corrections) reuse one
// factorization. Throws NumericError when a pivot vanishes at working
// precision.
struct LUFactors {
  Matrix<BigFloat> lu;       // unit-diagonal L below, U on and above
  std::vector<size_t> perm;  // perm[i] = source row of pivoted row i

  BFVec solve(BFVec rhs) const {
    const size_t n = lu.rows();
    require(rhs.size() == n, "LUFactors::solve: dimension mismatch");
    BFVec b(n);
    for (size_t i = 0; i < n; ++i) b[i] = rhs[perm[i]];
    for (size_t i = 1; i < n; ++i) {
      BigFloat acc = b[i];
      for (size_t j = 0; j < i; ++j) acc -= lu(i, j) * b[j];
      b[i] = acc;
    }
    BFVec x(n);
    for (size_t i = n; i-- > 0;) {
      BigFloat acc = b[i];
      for (size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * x[j];
      x[i] = acc / lu(i, i);
    }
    return x;
  }
};

inline LUFactors lu_factor(Matrix<BigFloat> a) {
  const size_t n = a.rows();
  require(a.cols() == n, "lu_factor: matrix not square");
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;

  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    BigFloat best = abs(a(col, col));
    for (size_t i = col + 1; i < n; ++i) {
      BigFloat cand = abs(a(i, col));
      if (best < cand) {
        best = cand;
        piv = i;
      }
    }
    if (best.is_zero())
      throw NumericError("lu_solve: singular system at working precision");
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(perm[col], perm[piv]);
    }
    for (size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      BigFloat f = a(i, col) / a(col, col);
      for (size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
      a(i, col) = f;  // multiplier stored in L's slot
    }
  }
  return LUFactors{std::move(a), std::move(perm)};
}

inline BFVec lu_solve(Matrix<BigFloat> a, BFVec rhs) {
  require(a.rows() == rhs.size(), "lu_solve: dimension mismatch");
  return lu_factor(std::move(a)).solve(std::move(rhs));
}

// rhs residual ||A x - b||_inf, for solver self-checks.
inline BigFloat residual_inf(const Matrix<BigFloat>& a, const BFVec& x, const BFVec& b) {
  BigFloat worst(64);
  for (size_t i = 0; i < a.rows(); ++i) {
    BigFloat acc = -b[i];
    for (size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    worst = max(worst, abs(acc));
  }
  return worst;
}

}  // namespace lw
