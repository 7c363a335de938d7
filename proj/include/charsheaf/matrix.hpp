#pragma once

// Dense matrices over an exact ring, sized for blocks of at most a few dozen
// rows. Provides the unitriangular inverse used for the matrices P-tilde
// (entries are Laurent polynomials, so only ring operations are available)
// and Gaussian elimination over an exact field (Cyclotomic entries).

#include <charsheaf/laurent.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace charsheaf {

template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("Matrix multiply: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Matrix add: dimension mismatch");
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) c.d_[i] = a.d_[i] + b.d_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Matrix subtract: dimension mismatch");
    Matrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) c.d_[i] = a.d_[i] - b.d_[i];
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.d_.size(); ++i)
      if (!(a.d_[i] == b.d_[i])) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
      }
    return true;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> d_;
};

// Throws unless M is square, its diagonal is identically 1, and everything
// below the diagonal is zero (row/column indices in the caller's order).
template <typename T>
void require_unitriangular(const Matrix<T>& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("unitriangular: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m.at(i, i).is_one())
      throw std::invalid_argument("unitriangular: diagonal entry is not 1");
    for (std::size_t j = 0; j < i; ++j)
      if (!m.at(i, j).is_zero())
        throw std::invalid_argument("unitriangular: nonzero entry below diagonal");
  }
}

// Inverse of an upper unitriangular matrix, using ring operations only.
// The inverse is again unitriangular: X_{ij} = -sum_{i<k<=j} M_{ik} X_{kj}.
template <typename T>
Matrix<T> unitriangular_inverse(const Matrix<T>& m) {
  require_unitriangular(m);
  std::size_t n = m.rows();
  Matrix<T> x = Matrix<T>::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i1 = j; i1 > 0; --i1) {
      std::size_t i = i1 - 1;
      T acc{};
      for (std::size_t k = i + 1; k <= j; ++k)
        acc = acc + m.at(i, k) * x.at(k, j);
      x.at(i, j) = T{} - acc;
    }
  }
  return x;
}

// P-tilde * (P-tilde^*)^{-1}, with * the entrywise q -> q^{-1} substitution.
inline Matrix<LaurentPoly> ptilde_star_inverse(const Matrix<LaurentPoly>& p) {
  require_unitriangular(p);
  Matrix<LaurentPoly> pstar(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) pstar.at(i, j) = p.at(i, j).star();
  return p * unitriangular_inverse(pstar);
}

// Solves A X = B over an exact field (T needs operator/), by Gauss-Jordan
// elimination with exact pivoting. Throws on a singular A.
template <typename T>
Matrix<T> field_solve(Matrix<T> a, Matrix<T> b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("field_solve: dimension mismatch");
  std::size_t n = a.rows(), w = b.cols();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!a.at(r, c).is_zero()) { piv = r; break; }
    if (piv == n) throw std::runtime_error("field_solve: singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(piv, j));
      for (std::size_t j = 0; j < w; ++j) std::swap(b.at(c, j), b.at(piv, j));
    }
    T inv = T(1) / a.at(c, c);
    for (std::size_t j = 0; j < n; ++j) a.at(c, j) = a.at(c, j) * inv;
    for (std::size_t j = 0; j < w; ++j) b.at(c, j) = b.at(c, j) * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a.at(r, c).is_zero()) continue;
      T f = a.at(r, c);
      for (std::size_t j = 0; j < n; ++j)
        a.at(r, j) = a.at(r, j) - f * a.at(c, j);
      for (std::size_t j = 0; j < w; ++j)
        b.at(r, j) = b.at(r, j) - f * b.at(c, j);
    }
  }
  return b;
}

template <typename T>
Matrix<T> field_inverse(const Matrix<T>& a) {
  return field_solve(a, Matrix<T>::identity(a.rows()));
}

}  // namespace charsheaf
