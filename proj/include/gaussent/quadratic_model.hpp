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

#ifndef GAUSSENT_QUADRATIC_MODEL_HPP
#define GAUSSENT_QUADRATIC_MODEL_HPP

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <utility>

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "symplectic.hpp"

namespace gaussent {

/// H = sum_i lambda_i b_i^dag b_i - 1/2 sum_ij (Delta+_ij b_i^dag b_j + h.c.)
///     - 1/2 sum_ij (Delta-_ij b_i^dag b_j^dag + h.c.) in the block form
///   calH = [[Lambda - Delta+, -Delta-], [-conj(Delta-), Lambda - conj(Delta+)]].
/// Stability (calH > 0) is checked by the solvers, not here.
template <typename Scalar>
class QuadraticHamiltonian {
 public:
  using MatrixType = Matrix<Scalar>;

  QuadraticHamiltonian(Eigen::VectorXd lambda, MatrixType delta_plus, MatrixType delta_minus,
                       const Tolerances& tol = {})
      : lambda_(std::move(lambda)), delta_plus_(std::move(delta_plus)), delta_minus_(std::move(delta_minus)) {
    const auto n = lambda_.size();
    if (delta_plus_.rows() != n || delta_plus_.cols() != n || delta_minus_.rows() != n ||
        delta_minus_.cols() != n) {
      throw InvalidArgument("coupling blocks must be n x n with n = number of local energies");
    }
    const double scale = std::max(1.0, std::max(max_abs(delta_plus_), max_abs(delta_minus_)));
    if (hermiticity_residual(delta_plus_) > tol.symmetry * scale) {
      throw SymmetryViolation("Delta+ is not hermitian");
    }
    if (symmetry_residual(delta_minus_) > tol.symmetry * scale) {
      throw SymmetryViolation("Delta- is not symmetric");
    }
  }

  int n_modes() const { return static_cast<int>(lambda_.size()); }
  const Eigen::VectorXd& lambda() const { return lambda_; }
  const MatrixType& delta_plus() const { return delta_plus_; }
  const MatrixType& delta_minus() const { return delta_minus_; }

  MatrixType block_matrix() const {
    const int n = n_modes();
    MatrixType a = -delta_plus_;
    a.diagonal() += lambda_.template cast<Scalar>();
    MatrixType h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = a;
    h.topRightCorner(n, n) = -delta_minus_;
    h.bottomLeftCorner(n, n) = -delta_minus_.conjugate();
    h.bottomRightCorner(n, n) = a.conjugate();
    return h;
  }

 private:
  Eigen::VectorXd lambda_;
  MatrixType delta_plus_;
  MatrixType delta_minus_;
};

/// Couplings with a free common local energy: H(lambda) = lambda * 1 - couplings.
template <typename Scalar>
struct CouplingTemplate {
  Matrix<Scalar> delta_plus;
  Matrix<Scalar> delta_minus;

  int n_modes() const { return static_cast<int>(delta_plus.rows()); }

  QuadraticHamiltonian<Scalar> at(double lambda) const {
    return QuadraticHamiltonian<Scalar>(Eigen::VectorXd::Constant(n_modes(), lambda), delta_plus, delta_minus);
  }
};

/// b_i = sum_a U_ia c_a + conj(V_ia) c_a^dag, with U^dag U - V^t conj(V) = 1 and U^dag V - V^t conj(U) = 0.
template <typename Scalar>
struct BogoliubovTransform {
  Matrix<Scalar> u;
  Matrix<Scalar> v;
  Eigen::VectorXd omega;  // ascending

  int n_modes() const { return static_cast<int>(u.rows()); }
};

template <typename Scalar>
struct GroundState {
  BogoliubovTransform<Scalar> transform;
  ContractionMatrix<Scalar> contractions;
};

/// max of the two symplectic-orthonormality residuals.
template <typename Scalar>
double bogoliubov_residual(const BogoliubovTransform<Scalar>& t) {
  const auto n = t.u.cols();
  const Matrix<Scalar> r1 =
      t.u.adjoint() * t.u - t.v.transpose() * t.v.conjugate() - Matrix<Scalar>::Identity(n, n);
  const Matrix<Scalar> r2 = t.u.adjoint() * t.v - t.v.transpose() * t.u.conjugate();
  return std::max(max_abs(r1), max_abs(r2));
}

/// || F- conj(F-) - F+ - (F+)^2 ||_max, zero for pure states.
template <typename Scalar>
double pure_state_residual(const ContractionMatrix<Scalar>& d) {
  const auto& fp = d.f_plus();
  const auto& fm = d.f_minus();
  return max_abs(fm * fm.conjugate() - fp - fp * fp);
}

namespace detail {

template <typename Scalar>
ContractionMatrix<Scalar> contractions_from(const Matrix<Scalar>& fp, const Matrix<Scalar>& fm) {
  Matrix<Scalar> p = 0.5 * (fp + fp.adjoint());
  Matrix<Scalar> m = 0.5 * (fm + fm.transpose());
  return ContractionMatrix<Scalar>(std::move(p), std::move(m));
}

}  // namespace detail

/// Exact ground state. calH = L L^dag; the hermitian matrix L^dag M L has eigenvalues
/// +-omega and its top-n eigenvectors y give normal modes x = L^-dag y sqrt(omega),
/// which are symplectically orthonormal even inside degenerate blocks.
template <typename Scalar>
GroundState<Scalar> solve_ground_state(const QuadraticHamiltonian<Scalar>& h) {
  const int n = h.n_modes();
  GroundState<Scalar> out;
  if (n == 0) return out;
  Eigen::LLT<Matrix<Scalar>> llt(h.block_matrix());
  if (llt.info() != Eigen::Success) {
    throw Unstable("Hamiltonian is not positive definite (lambda at or below the critical point)");
  }
  const Matrix<Scalar> lower = llt.matrixL();
  Matrix<Scalar> s = lower.adjoint() * detail::metric_times(lower);
  s = (0.5 * (s + s.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(s);
  if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver did not converge");
  const Eigen::VectorXd omega = es.eigenvalues().tail(n);
  constexpr double kGap = 1e-10;
  if (omega.minCoeff() <= kGap) {
    throw Unstable("normal-mode energy " + std::to_string(omega.minCoeff()) + " is not positive");
  }
  Matrix<Scalar> x = es.eigenvectors().rightCols(n);
  llt.matrixU().solveInPlace(x);  // L^dag x = y
  x = x * omega.cwiseSqrt().template cast<Scalar>().asDiagonal();

  auto& t = out.transform;
  t.u = x.topRows(n);
  t.v = x.bottomRows(n).conjugate();
  t.omega = omega;
  out.contractions = detail::contractions_from<Scalar>(t.v * t.v.adjoint(), t.v * t.u.transpose());
  return out;
}

/// Contractions of the Gibbs state exp(-beta H)/Z; normal modes carry Bose occupations.
/// beta = infinity gives the ground state.
template <typename Scalar>
ContractionMatrix<Scalar> thermal_contractions(const BogoliubovTransform<Scalar>& t, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(t.omega.size());
  if (std::isfinite(beta)) {
    for (Eigen::Index a = 0; a < occ.size(); ++a) occ(a) = 1.0 / std::expm1(beta * t.omega(a));
  }
  const auto nd = occ.template cast<Scalar>().asDiagonal();
  const Matrix<Scalar> vn = t.v * nd;
  const Matrix<Scalar> un = t.u * nd;
  const Matrix<Scalar> fp = t.v * t.v.adjoint() + vn * t.v.adjoint() + un * t.u.adjoint();
  const Matrix<Scalar> fm = t.v * t.u.transpose() + vn * t.u.transpose() + un * t.v.transpose();
  return detail::contractions_from<Scalar>(fp, fm);
}

struct PerturbativeDiagnostics {
  double coupling_ratio = 0.0;  // max(||Delta+||, ||Delta-||) / lambda, spectral norm
  bool strong = false;          // ratio above the warning level
};

inline constexpr double kPerturbativeWarn = 0.2;
inline constexpr double kPerturbativeMax = 0.5;

namespace detail {

template <typename Scalar>
double common_lambda(const QuadraticHamiltonian<Scalar>& h) {
  const auto& l = h.lambda();
  if (l.size() == 0) return 1.0;
  const double lam = l(0);
  for (Eigen::Index i = 1; i < l.size(); ++i) {
    if (std::abs(l(i) - lam) > 1e-12 * std::max(1.0, std::abs(lam))) {
      throw UnequalLocalEnergies("perturbative contractions need a common local energy");
    }
  }
  if (!(lam > 0.0)) throw Unstable("local energy must be positive");
  return lam;
}

}  // namespace detail

/// Order 1: F- = Delta-/(2 lambda). Order 2 adds (Delta+ Delta- + Delta- conj(Delta+))/(4 lambda^2).
/// F+ = F- conj(F-) in both cases.
template <typename Scalar>
ContractionMatrix<Scalar> perturbative_contractions(const QuadraticHamiltonian<Scalar>& h, int order,
                                                    PerturbativeDiagnostics* diag = nullptr) {
  if (order != 1 && order != 2) throw InvalidArgument("perturbative order must be 1 or 2");
  const double lam = detail::common_lambda(h);
  const auto& dp = h.delta_plus();
  const auto& dm = h.delta_minus();
  const double ratio = std::max(matrix_norm(dp, kInfinity), matrix_norm(dm, kInfinity)) / lam;
  if (ratio >= kPerturbativeMax) {
    throw CouplingTooStrong("coupling/lambda = " + std::to_string(ratio) + " is too large for perturbation theory");
  }
  if (diag) *diag = {ratio, ratio > kPerturbativeWarn};
  Matrix<Scalar> fm = dm / (2.0 * lam);
  if (order == 2) fm += (dp * dm + dm * dp.conjugate()) / (4.0 * lam * lam);
  const Matrix<Scalar> fp = fm * fm.conjugate();
  return detail::contractions_from<Scalar>(fp, fm);
}

/// Leading-order transform: U diagonalizes Lambda - Delta+ (unitary), and
/// V = U K with K_ab = (U^dag Delta- conj(U))_ab / (omega_a + omega_b).
template <typename Scalar>
BogoliubovTransform<Scalar> perturbative_bogoliubov(const QuadraticHamiltonian<Scalar>& h) {
  const int n = h.n_modes();
  Matrix<Scalar> a = -h.delta_plus();
  a.diagonal() += h.lambda().template cast<Scalar>();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(a);
  if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver did not converge");
  BogoliubovTransform<Scalar> t;
  t.omega = es.eigenvalues();
  if (n > 0 && t.omega.minCoeff() <= 0.0) throw Unstable("Lambda - Delta+ is not positive definite");
  t.u = es.eigenvectors();
  Matrix<Scalar> k = t.u.adjoint() * h.delta_minus() * t.u.conjugate();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k(i, j) /= (t.omega(i) + t.omega(j));
  }
  t.v = t.u * k;
  return t;
}

template <typename Scalar>
Matrix<Scalar> perturbative_bogoliubov_v(const QuadraticHamiltonian<Scalar>& h) {
  return perturbative_bogoliubov(h).v;
}

struct CriticalLambda {
  double exact = 0.0;     // smallest lambda with a vanishing normal-mode energy
  double estimate = 0.0;  // max_i sum_j (|Delta+_ij| + |Delta-_ij|)
};

namespace detail {

template <typename Scalar>
bool positive_definite(const CouplingTemplate<Scalar>& c, double lambda) {
  Eigen::LLT<Matrix<Scalar>> llt(c.at(lambda).block_matrix());
  return llt.info() == Eigen::Success;
}

}  // namespace detail

/// Row-sum bound max_i sum_j (|Delta+_ij| + |Delta-_ij|) on the critical local energy;
/// 2 (Delta+ + |Delta-|) for isotropic square lattices, exact when cyclic.
template <typename Scalar>
double lambda_c_estimate(const CouplingTemplate<Scalar>& c) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < c.delta_plus.rows(); ++i) {
    best = std::max(best, static_cast<double>(c.delta_plus.row(i).cwiseAbs().sum() +
                                              c.delta_minus.row(i).cwiseAbs().sum()));
  }
  return best;
}

/// Critical local energy. calH(lambda) = lambda - K with K = [[D+, D-], [conj D-, conj D+]],
/// so the gap closes at the top eigenvalue of K; the value is bracketed by Cholesky
/// tests and refined by bisection.
template <typename Scalar>
CriticalLambda critical_lambda(const CouplingTemplate<Scalar>& c) {
  const int n = c.n_modes();
  CriticalLambda out;
  out.estimate = lambda_c_estimate(c);
  Matrix<Scalar> k(2 * n, 2 * n);
  k.topLeftCorner(n, n) = c.delta_plus;
  k.topRightCorner(n, n) = c.delta_minus;
  k.bottomLeftCorner(n, n) = c.delta_minus.conjugate();
  k.bottomRightCorner(n, n) = c.delta_plus.conjugate();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(k, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver did not converge");
  const double top = n > 0 ? es.eigenvalues()(2 * n - 1) : 0.0;
  const double scale = std::max(out.estimate, 1e-300);
  if (n == 0 || top <= 1e-12 * scale) {
    throw NoCriticalPoint("normal-mode energies stay positive for every lambda > 0");
  }
  double lo = top * (1.0 - 1e-9);
  double hi = top * (1.0 + 1e-9);
  while (detail::positive_definite(c, lo)) lo -= (hi - lo);
  while (!detail::positive_definite(c, hi)) hi += (hi - lo);
  for (int it = 0; it < 60 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (detail::positive_definite(c, mid) ? hi : lo) = mid;
  }
  out.exact = hi;
  return out;
}

/// Fully connected couplings Delta+-_ij = (1 - delta_ij) Delta+- / (n - 1),
/// with Delta+- = (Delta_x +- Delta_y) / 2.
inline CouplingTemplate<double> fully_connected_couplings(int n, double delta_x, double delta_y) {
  if (n < 2) throw InvalidArgument("fully connected model needs at least two modes");
  RealMatrix off = RealMatrix::Ones(n, n);
  off.diagonal().setZero();
  const double dp = 0.5 * (delta_x + delta_y) / (n - 1);
  const double dm = 0.5 * (delta_x - delta_y) / (n - 1);
  return {dp * off, dm * off};
}

}  // namespace gaussent

#endif  // GAUSSENT_QUADRATIC_MODEL_HPP
