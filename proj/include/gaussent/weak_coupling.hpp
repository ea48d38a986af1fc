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

#ifndef GAUSSENT_WEAK_COUPLING_HPP
#define GAUSSENT_WEAK_COUPLING_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "symplectic.hpp"

namespace gaussent {

enum class CountertermForm {
  Definition,   // G_S = F+_S - F-_S conj(F-_S)
  Environment,  // G_S = F-_{S,E} conj(F-_{E,S}), E = complement of B u C
};

struct WeakCouplingOptions {
  double gate = 0.1;  // largest single-mode f_i still treated as weakly correlated
  bool strict = false;  // throw NotWeaklyCorrelated above the gate instead of flagging
  CountertermForm counterterm = CountertermForm::Environment;
  double degeneracy = 1e-9;  // relative gap below which singular values form one block
};

struct WeakCouplingEstimate {
  std::vector<double> sigma;                    // descending
  std::optional<std::vector<double>> corrected;  // first-order partial-transpose values
  std::vector<bool> condition_flags;            // sigma_a > sqrt(gB_aa gC_aa)
  bool degraded = false;                        // gate exceeded
  double max_local_f = 0.0;
};

/// Single-mode symplectic eigenvalue and the local rotation b -> u b - phase v b^dag
/// that removes the anomalous contraction of that mode.
template <typename Scalar>
struct LocalMode {
  double f = 0.0;
  double u = 1.0;
  double v = 0.0;
  Scalar phase = Scalar(1);
};

template <typename Scalar>
LocalMode<Scalar> local_symplectic_eigenvalue(const ContractionMatrix<Scalar>& d, int i,
                                              const Tolerances& tol = {}) {
  if (i < 0 || i >= d.n_modes()) throw OutOfBounds("mode " + std::to_string(i) + " out of range");
  const double fp = std::real(d.f_plus()(i, i));
  const Scalar fm = d.f_minus()(i, i);
  const double radicand = (0.5 + fp) * (0.5 + fp) - std::norm(fm);
  // Radicand is (f + 1/2)^2 >= 1/4 for physical states.
  if (radicand < 0.25 - tol.physicality) {
    throw NonPhysical("local radicand " + std::to_string(radicand) + " below 1/4");
  }
  LocalMode<Scalar> out;
  out.f = std::max(std::sqrt(std::max(radicand, 0.25)) - 0.5, 0.0);
  const double denom = 2.0 * out.f + 1.0;
  out.u = std::sqrt((fp + 0.5 + (out.f + 0.5)) / denom);
  out.v = std::sqrt(std::max((fp + 0.5 - (out.f + 0.5)) / denom, 0.0));
  if (std::abs(fm) > 0.0) out.phase = fm / std::abs(fm);
  return out;
}

namespace detail {

template <typename Scalar>
double max_local_f(const ContractionMatrix<Scalar>& d, std::span<const int> modes, const Tolerances& tol) {
  double m = 0.0;
  for (int i : modes) m = std::max(m, local_symplectic_eigenvalue(d, i, tol).f);
  return m;
}

inline void apply_gate(WeakCouplingEstimate& est, double max_f, const WeakCouplingOptions& opt) {
  est.max_local_f = max_f;
  if (max_f > opt.gate) {
    if (opt.strict) {
      throw NotWeaklyCorrelated("largest local symplectic eigenvalue " + std::to_string(max_f) +
                                " exceeds the weak-coupling gate");
    }
    est.degraded = true;
  }
}

}  // namespace detail

/// f_a ~ sigma_a^2 with sigma the singular values of F-_{A, complement}.
template <typename Scalar>
WeakCouplingEstimate approx_reduced_spectrum(const ContractionMatrix<Scalar>& d, std::span<const int> a,
                                             const WeakCouplingOptions& opt = {}, const Tolerances& tol = {}) {
  const IndexList rest = complement_indices(a, d.n_modes());
  WeakCouplingEstimate est;
  est.sigma = singular_values(block_of(d.f_minus(), a, std::span<const int>(rest)));
  detail::apply_gate(est, detail::max_local_f(d, a, tol), opt);
  return est;
}

/// -sum sigma^2 log(sigma^2 / e).
inline EntropyValue approx_entropy(const WeakCouplingEstimate& est, LogBase base = LogBase::Two) {
  double sum = 0.0;
  for (double s : est.sigma) {
    const double x = s * s;
    if (x > 0.0) sum -= x * (std::log(x) - 1.0);
  }
  return {in_base(sum, base)};
}

template <typename Scalar>
struct Counterterms {
  Matrix<Scalar> definition_b, definition_c;
  Matrix<Scalar> environment_b, environment_c;
  CountertermForm requested = CountertermForm::Environment;

  const Matrix<Scalar>& g_b() const {
    return requested == CountertermForm::Definition ? definition_b : environment_b;
  }
  const Matrix<Scalar>& g_c() const {
    return requested == CountertermForm::Definition ? definition_c : environment_c;
  }
};

template <typename Scalar>
Counterterms<Scalar> counterterms(const ContractionMatrix<Scalar>& d, std::span<const int> b,
                                  std::span<const int> c, CountertermForm form = CountertermForm::Environment) {
  if (!disjoint(b, c)) throw OverlappingRegions("counterterms need disjoint subsystems");
  IndexList bc(b.begin(), b.end());
  bc.insert(bc.end(), c.begin(), c.end());
  const IndexList env = complement_indices(bc, d.n_modes());
  const std::span<const int> e(env);
  const auto& fp = d.f_plus();
  const auto& fm = d.f_minus();
  Counterterms<Scalar> out;
  out.requested = form;
  auto definition = [&](std::span<const int> s) {
    const Matrix<Scalar> fs = block_of(fm, s, s);
    return Matrix<Scalar>(block_of(fp, s, s) - fs * fs.conjugate());
  };
  auto environment = [&](std::span<const int> s) {
    return Matrix<Scalar>(block_of(fm, s, e) * block_of(fm, e, s).conjugate());
  };
  out.definition_b = definition(b);
  out.definition_c = definition(c);
  out.environment_b = environment(b);
  out.environment_c = environment(c);
  return out;
}

/// Order 0: f~_a = -sigma_a with sigma the singular values of F-_{B,C}.
/// Order 1: f~_a = -sigma_a + (x^dag conj(G_B) x + y^dag G_C y)/2 in the singular bases of
/// conj(F-_{B,C}) = P S Q^dag; inside a degenerate sigma block the correction matrix is
/// diagonalised first. Condition flags mark sigma_a > sqrt(gB gC).
template <typename Scalar>
WeakCouplingEstimate approx_pt_spectrum(const ContractionMatrix<Scalar>& d, std::span<const int> b,
                                        std::span<const int> c, int order, const WeakCouplingOptions& opt = {},
                                        const Tolerances& tol = {}) {
  if (order != 0 && order != 1) throw InvalidArgument("partial-transpose estimate order must be 0 or 1");
  if (!disjoint(b, c)) throw OverlappingRegions("partial transpose needs disjoint subsystems");
  WeakCouplingEstimate est;
  IndexList bc(b.begin(), b.end());
  bc.insert(bc.end(), c.begin(), c.end());
  detail::apply_gate(est, detail::max_local_f(d, std::span<const int>(bc), tol), opt);

  const Matrix<Scalar> cross = block_of(d.f_minus(), b, c).conjugate();
  const auto svd = thin_svd(cross);
  est.sigma = svd.values;
  const auto k = static_cast<Eigen::Index>(est.sigma.size());
  est.condition_flags.assign(est.sigma.size(), false);

  const auto g = counterterms(d, b, c, opt.counterterm);
  const Matrix<Scalar> gb = g.g_b().conjugate();
  const Matrix<Scalar>& gc = g.g_c();
  std::vector<double> corrected(est.sigma.size());
  Eigen::Index a0 = 0;
  while (a0 < k) {
    Eigen::Index a1 = a0 + 1;
    const double s0 = est.sigma[static_cast<std::size_t>(a0)];
    while (a1 < k && std::abs(est.sigma[static_cast<std::size_t>(a1)] - s0) <=
                         opt.degeneracy * std::max(s0, 1e-300) + 1e-15) {
      ++a1;
    }
    Matrix<Scalar> x = svd.left.middleCols(a0, a1 - a0);
    Matrix<Scalar> y = svd.right.middleCols(a0, a1 - a0);
    Matrix<Scalar> w = 0.5 * (x.adjoint() * gb * x + y.adjoint() * gc * y);
    w = (0.5 * (w + w.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(w);
    x = x * es.eigenvectors();
    y = y * es.eigenvectors();
    for (Eigen::Index j = 0; j < a1 - a0; ++j) {
      const auto idx = static_cast<std::size_t>(a0 + j);
      const double gbb = std::max(std::real(x.col(j).dot(gb * x.col(j))), 0.0);
      const double gcc = std::max(std::real(y.col(j).dot(gc * y.col(j))), 0.0);
      est.condition_flags[idx] = est.sigma[idx] > std::sqrt(gbb * gcc);
      corrected[idx] = -est.sigma[idx] + es.eigenvalues()(j);
    }
    a0 = a1;
  }
  if (order == 1) est.corrected = std::move(corrected);
  return est;
}

/// -2 log(e) sum over negative f~, using the corrected values when present.
inline NegativityValue approx_log_negativity(const WeakCouplingEstimate& est, LogBase base = LogBase::Two) {
  double sum = 0.0;
  if (est.corrected) {
    for (double f : *est.corrected) {
      if (f < 0.0) sum -= 2.0 * f;
    }
  } else {
    for (double s : est.sigma) sum += 2.0 * s;
  }
  return {in_base(sum, base), false};
}

}  // namespace gaussent

#endif  // GAUSSENT_WEAK_COUPLING_HPP
