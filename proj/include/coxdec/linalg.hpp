// Copyright 2026 The Coxdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coxdec {

// Dense small matrices (rank <= 10 throughout the library). Row-major.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<double> row(int i) const {
    return std::vector<double>(v_.begin() + static_cast<size_t>(i) * cols_,
                               v_.begin() + static_cast<size_t>(i + 1) * cols_);
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> v_;
};

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minkowski form of signature (n,1): the last coordinate is the timelike one.
inline double minkowski(const Vec& a, const Vec& b) {
  double s = 0.0;
  size_t n = a.size();
  for (size_t i = 0; i + 1 < n; ++i) s += a[i] * b[i];
  return s - a[n - 1] * b[n - 1];
}

struct EigenSym {
  std::vector<double> values;  // ascending
  Mat vectors;                 // columns are eigenvectors, same order
};

// Cyclic Jacobi iteration. Plenty for symmetric matrices up to 10x10.
inline EigenSym eigen_sym(const Mat& a_in) {
  int n = a_in.rows();
  Mat a = a_in;
  Mat q = Mat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) {
        double apr = a(p, r);
        if (std::fabs(apr) < 1e-15) continue;
        double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x) < a(y, y); });
  EigenSym e;
  e.values.resize(n);
  e.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    e.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) e.vectors(i, j) = q(i, order[j]);
  }
  return e;
}

// Gaussian elimination with partial pivoting; throws on singular input.
inline Mat solve(Mat a, Mat b) {
  int n = a.rows();
  assert(a.cols() == n && b.rows() == n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
    if (std::fabs(a(piv, col)) < 1e-12) throw std::runtime_error("singular system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
    }
    double d = a(col, col);
    for (int j = 0; j < n; ++j) a(col, j) /= d;
    for (int j = 0; j < b.cols(); ++j) b(col, j) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      double f = a(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(col, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) -= f * b(col, j);
    }
  }
  return b;
}

inline Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

inline double det(Mat a) {
  int n = a.rows();
  double d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(a(i, col)) > std::fabs(a(piv, col))) piv = i;
    if (std::fabs(a(piv, col)) < 1e-14) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      d = -d;
    }
    d *= a(col, col);
    for (int i = col + 1; i < n; ++i) {
      double f = a(i, col) / a(col, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return d;
}

}  // namespace coxdec
