#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "syncgame/rational.hpp"

namespace syncgame {

using Complex = std::complex<double>;

inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& x) { return std::norm(x); }
inline double abs2(const Rational& x) {
  double d = x.to_double();
  return d * d;
}

inline double conj_scalar(double x) { return x; }
inline Complex conj_scalar(const Complex& x) { return std::conj(x); }
inline Rational conj_scalar(const Rational& x) { return x; }

// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& v = x(i, k);
        if (v == T(0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + v * y(k, j);
      }
    return r;
  }
  friend Mat operator*(const T& s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a_) v = s * v;
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Mat conj_transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj_scalar((*this)(i, j));
    return r;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& v : a_) s += abs2(v);
    return std::sqrt(s);
  }
  bool all_zero() const {
    for (const auto& v : a_)
      if (!(v == T(0))) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using CMat = Mat<Complex>;
using QMat = Mat<Rational>;

// Gaussian elimination inverse with partial pivoting (floating scalars)
// or exact pivot search (rationals).
template <class T>
Mat<T> inverse(Mat<T> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("inverse: not square");
  Mat<T> inv = Mat<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::sqrt(abs2(a(col, col)));
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = std::sqrt(abs2(a(r, col)));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = a(r, col);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Cholesky of a Hermitian matrix; returns false unless positive definite
// with all pivots above tol.
inline bool cholesky_posdef(const CMat& a, double tol = 1e-12) {
  const std::size_t n = a.rows();
  if (n != a.cols()) return false;
  CMat l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      if (i == j) {
        if (std::abs(s.imag()) > 1e-9 || s.real() <= tol) return false;
        l(i, i) = std::sqrt(s.real());
      } else {
        l(i, j) = s / l(j, j).real();
      }
    }
  }
  return true;
}

inline CMat to_complex(const QMat& q) {
  CMat r(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) r(i, j) = Complex(q(i, j).to_double(), 0);
  return r;
}

}  // namespace syncgame
