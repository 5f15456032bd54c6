// Copyright 2026 The ycurve Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ycurve/errors.hpp"

namespace ycurve {

/// Dense row-major matrix for the small systems used here (a few columns,
/// a few hundred rows at most).
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DomainError("numerics", "matrix dimensions must be >= 1");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols()) throw DomainError("numerics", "ragged matrix rows");
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Xᵀ X.
inline Matrix gram(const Matrix& x) {
  Matrix g(x.cols(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t i = 0; i < x.cols(); ++i) {
      const double xi = x(r, i);
      for (std::size_t j = 0; j <= i; ++j) g(i, j) += xi * x(r, j);
    }
  }
  for (std::size_t i = 0; i < x.cols(); ++i) {
    for (std::size_t j = 0; j < i; ++j) g(j, i) = g(i, j);
  }
  return g;
}

/// Xᵀ v.
inline std::vector<double> transpose_times(const Matrix& x, std::span<const double> v) {
  std::vector<double> out(x.cols(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t j = 0; j < x.cols(); ++j) out[j] += x(r, j) * v[r];
  }
  return out;
}

/// X v.
inline std::vector<double> times(const Matrix& x, std::span<const double> v) {
  std::vector<double> out(x.rows(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) acc += x(r, j) * v[j];
    out[r] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard normal distribution

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

inline double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

namespace detail {

// Beyond this |x| the tail is evaluated by continued fraction.
inline constexpr double kTailCut = 2.0;

// Laplace continued fraction for the upper tail, valid for x > 0:
//   1 - Φ(x) = φ(x) / (x + 1/(x + 2/(x + 3/(x + ...))))
// Returns the denominator. With 200 terms the relative error is below
// 1e-20 for x >= 2.
inline double tail_denominator(double x) {
  double d = x;
  for (int k = 200; k >= 1; --k) d = x + k / d;
  return d;
}

// Φ(x) - 1/2 = φ(x) (x + x³/3 + x⁵/15 + ...). All terms share the sign of x,
// so the sum has no cancellation.
inline double central_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 500; ++n) {
    term *= x2 / (2 * n + 1);
    const double next = sum + term;
    if (next == sum) break;
    sum = next;
  }
  return std_normal_pdf(x) * sum;
}

}  // namespace detail

/// Φ(x), absolute error near machine precision; Φ(-x) + Φ(x) == 1 to
/// within one rounding.
inline double std_normal_cdf(double x) {
  if (std::isnan(x)) return x;
  if (x < -detail::kTailCut) return std_normal_pdf(x) / detail::tail_denominator(-x);
  if (x > detail::kTailCut) return 1.0 - std_normal_pdf(x) / detail::tail_denominator(x);
  return 0.5 + detail::central_series(x);
}

/// ln Φ(x) without underflow in the lower tail.
inline double std_normal_log_cdf(double x) {
  if (x < -detail::kTailCut) {
    return -0.5 * x * x - kLogSqrt2Pi - std::log(detail::tail_denominator(-x));
  }
  if (x > detail::kTailCut) return std::log1p(-std_normal_pdf(x) / detail::tail_denominator(x));
  return std::log(std_normal_cdf(x));
}

/// φ(x) / Φ(x) (inverse Mills ratio), finite for all finite x.
inline double std_normal_hazard_lower(double x) {
  if (x < -detail::kTailCut) return detail::tail_denominator(-x);
  return std_normal_pdf(x) / std_normal_cdf(x);
}

/// Φ⁻¹(p) for p in (0, 1).
inline double std_normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("numerics", "inverse normal CDF needs p in (0,1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // Work in the lower half; 1 - p is exact for p >= 0.5.
  const bool upper = p > 0.5;
  const double q = upper ? 1.0 - p : p;

  // Rational starting guess (Abramowitz & Stegun 26.2.23, |error| < 4.5e-4).
  const double t = std::sqrt(-2.0 * std::log(q));
  double x = -(t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                       (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))));

  // Newton on ln Φ(x) = ln q; ln Φ is concave so the iteration cannot cycle.
  const double target = std::log(q);
  for (int iter = 0; iter < 60; ++iter) {
    const double step = (std_normal_log_cdf(x) - target) / std_normal_hazard_lower(x);
    x -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return upper ? -x : x;
}

// ---------------------------------------------------------------------------
// Symmetric positive definite systems

/// Cholesky factor A = L Lᵀ of a symmetric positive definite matrix.
class Cholesky {
 public:
  /// Pivots at or below pivot_floor * max|diag(A)| are rejected.
  explicit Cholesky(const Matrix& a, double pivot_floor = 1e-12) : lower_(a.rows(), a.cols()) {
    if (a.rows() != a.cols()) throw DomainError("numerics", "matrix is not square");
    const std::size_t n = a.rows();
    double scale = 0.0;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(a(i, i)));
      for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(a(i, j)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(a(i, j) - a(j, i)) > 1e-10 * max_abs) {
          throw DomainError("numerics", "matrix is not symmetric");
        }
      }
    }

    for (std::size_t j = 0; j < n; ++j) {
      double pivot = a(j, j);
      for (std::size_t k = 0; k < j; ++k) pivot -= lower_(j, k) * lower_(j, k);
      if (!(pivot > pivot_floor * scale)) {
        throw SingularityError("numerics",
                               "matrix not positive definite at pivot " + std::to_string(j));
      }
      const double root = std::sqrt(pivot);
      lower_(j, j) = root;
      for (std::size_t i = j + 1; i < n; ++i) {
        double acc = a(i, j);
        for (std::size_t k = 0; k < j; ++k) acc -= lower_(i, k) * lower_(j, k);
        lower_(i, j) = acc / root;
      }
    }
  }

  std::size_t size() const noexcept { return lower_.rows(); }
  const Matrix& lower() const noexcept { return lower_; }

  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = size();
    if (b.size() != n) throw DomainError("numerics", "right-hand side has wrong length");
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < i; ++k) x[i] -= lower_(i, k) * x[k];
      x[i] /= lower_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x[i] -= lower_(k, i) * x[k];
      x[i] /= lower_(i, i);
    }
    return x;
  }

  Matrix inverse() const {
    const std::size_t n = size();
    Matrix inv(n, n);
    std::vector<double> unit(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      unit.assign(n, 0.0);
      unit[j] = 1.0;
      const auto col = solve(unit);
      for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
  }

 private:
  Matrix lower_;
};

/// Solves A x = b for symmetric positive definite A.
inline std::vector<double> solve_spd(const Matrix& a, std::span<const double> b) {
  return Cholesky(a).solve(b);
}

}  // namespace ycurve
