// Copyright 2026 The gaussent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSENT_LINALG_HPP
#define GAUSSENT_LINALG_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <span>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace gaussent {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;

// Ordered list of mode indices; the order fixes the block layout of sub-matrices.
using IndexList = std::vector<int>;

template <typename Scalar>
inline constexpr bool is_complex_v = Eigen::NumTraits<Scalar>::IsComplex;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

template <typename Derived>
double symmetry_residual(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.transpose());
}

template <typename Scalar>
Matrix<Scalar> block_of(const Matrix<Scalar>& m, std::span<const int> rows, std::span<const int> cols) {
  Matrix<Scalar> out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

// Indices in [0, n) that are not in `subset`, in increasing order.
inline IndexList complement_indices(std::span<const int> subset, int n) {
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  for (int i : subset) {
    if (i < 0 || i >= n) throw OutOfBounds("index " + std::to_string(i) + " outside [0, " + std::to_string(n) + ")");
    taken[static_cast<std::size_t>(i)] = 1;
  }
  IndexList out;
  for (int i = 0; i < n; ++i) {
    if (!taken[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

inline bool disjoint(std::span<const int> a, std::span<const int> b) {
  std::vector<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<int> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return common.empty();
}

/// Singular values in descending order; min(rows, cols) entries, zeros included.
template <typename Derived>
std::vector<double> singular_values(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  using Plain = typename Derived::PlainObject;
  Eigen::BDCSVD<Plain> svd(a.eval());
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Thin singular value decomposition a = left * diag(values) * right^dagger.
template <typename Scalar>
struct Svd {
  std::vector<double> values;  // descending
  Matrix<Scalar> left;         // rows(a) x k
  Matrix<Scalar> right;        // cols(a) x k
};

template <typename Scalar>
Svd<Scalar> thin_svd(const Matrix<Scalar>& a) {
  Svd<Scalar> out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.left.resize(a.rows(), 0);
    out.right.resize(a.cols(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix<Scalar>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();  // Eigen already sorts descending
  out.values.assign(s.data(), s.data() + s.size());
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  return out;
}

/// Schatten norm of order m in {1, 2, infinity}.
template <typename Derived>
double matrix_norm(const Eigen::MatrixBase<Derived>& a, double m) {
  const auto s = singular_values(a);
  if (m == 1.0) {
    double sum = 0.0;
    for (double v : s) sum += v;
    return sum;
  }
  if (m == 2.0) {
    double sum = 0.0;
    for (double v : s) sum += v * v;
    return std::sqrt(sum);
  }
  if (m == kInfinity) return s.empty() ? 0.0 : s.front();
  throw UnsupportedNorm("matrix_norm supports m in {1, 2, inf}");
}

}  // namespace gaussent

#endif  // GAUSSENT_LINALG_HPP
