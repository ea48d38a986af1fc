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

#ifndef GAUSSENT_SYMPLECTIC_HPP
#define GAUSSENT_SYMPLECTIC_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace gaussent {

// Reduced: spectrum of a physical (sub)state, all values >= 0.
// PartialTranspose: spectrum of a partially transposed state, all values >= -1/2.
enum class SpectrumKind { Reduced, PartialTranspose };

enum class SymplecticMethod {
  Williamson,    // Cholesky of D + M/2 followed by a hermitian eigenproblem
  PairMatching,  // non-hermitian eigenproblem of D*M with (f, -(1+f)) pair matching
};

/// Contraction matrix of a zero-mean gaussian state:
///   D = [[F+, F-], [conj(F-), 1 + conj(F+)]],  F+_ij = <b_j^dag b_i>,  F-_ij = <b_i b_j>.
/// F+ must be hermitian and F- symmetric; the kind records whether the matrix
/// describes a state or the partial transpose of one.
template <typename Scalar>
class ContractionMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  ContractionMatrix() = default;

  ContractionMatrix(MatrixType f_plus, MatrixType f_minus, SpectrumKind kind = SpectrumKind::Reduced,
                    const Tolerances& tol = {})
      : f_plus_(std::move(f_plus)), f_minus_(std::move(f_minus)), kind_(kind) {
    if (f_plus_.rows() != f_plus_.cols() || f_minus_.rows() != f_minus_.cols() ||
        f_plus_.rows() != f_minus_.rows()) {
      throw InvalidArgument("contraction blocks must be square and of equal size");
    }
    const double scale = std::max(1.0, std::max(max_abs(f_plus_), max_abs(f_minus_)));
    const double herm = hermiticity_residual(f_plus_);
    const double sym = symmetry_residual(f_minus_);
    if (herm > tol.symmetry * scale) {
      throw SymmetryViolation("F+ is not hermitian (residual " + std::to_string(herm) + ")");
    }
    if (sym > tol.symmetry * scale) {
      throw SymmetryViolation("F- is not symmetric (residual " + std::to_string(sym) + ")");
    }
  }

  static ContractionMatrix vacuum(int n) {
    return ContractionMatrix(MatrixType::Zero(n, n), MatrixType::Zero(n, n));
  }

  int n_modes() const { return static_cast<int>(f_plus_.rows()); }
  const MatrixType& f_plus() const { return f_plus_; }
  const MatrixType& f_minus() const { return f_minus_; }
  SpectrumKind kind() const { return kind_; }

  /// Sub-block D_A for the ordered mode list `modes`.
  ContractionMatrix restrict_to(std::span<const int> modes) const {
    for (int i : modes) {
      if (i < 0 || i >= n_modes()) throw OutOfBounds("mode " + std::to_string(i) + " out of range");
    }
    ContractionMatrix out;
    out.f_plus_ = block_of(f_plus_, modes, modes);
    out.f_minus_ = block_of(f_minus_, modes, modes);
    out.kind_ = kind_;
    return out;
  }

  /// The full 2n x 2n matrix D.
  MatrixType full() const {
    const int n = n_modes();
    MatrixType d(2 * n, 2 * n);
    d.topLeftCorner(n, n) = f_plus_;
    d.topRightCorner(n, n) = f_minus_;
    d.bottomLeftCorner(n, n) = f_minus_.conjugate();
    d.bottomRightCorner(n, n) = MatrixType::Identity(n, n) + f_plus_.conjugate();
    return d;
  }

 private:
  MatrixType f_plus_;
  MatrixType f_minus_;
  SpectrumKind kind_ = SpectrumKind::Reduced;
};

struct SymplecticSpectrum {
  std::vector<double> values;  // ascending
  SpectrumKind kind = SpectrumKind::Reduced;

  std::size_t size() const { return values.size(); }
  double min() const { return values.empty() ? 0.0 : values.front(); }
  double max() const { return values.empty() ? 0.0 : values.back(); }
};

struct EntropyValue {
  double value = 0.0;
};

struct NegativityValue {
  double value = 0.0;
  bool diverging = false;  // some eigenvalue sat at the -1/2 floor
};

namespace detail {

// The symplectic metric applied from the left: rows n..2n-1 change sign.
template <typename Scalar>
Matrix<Scalar> metric_times(const Matrix<Scalar>& m) {
  Matrix<Scalar> out = m;
  const Eigen::Index n = m.rows() / 2;
  out.bottomRows(n) *= Scalar(-1);
  return out;
}

inline SymplecticSpectrum validate_spectrum(std::vector<double> values, SpectrumKind kind, const Tolerances& tol) {
  std::sort(values.begin(), values.end());
  const double floor = kind == SpectrumKind::Reduced ? 0.0 : -0.5;
  for (double& f : values) {
    if (!std::isfinite(f)) throw NumericalFailure("non-finite symplectic eigenvalue");
    if (f < floor - tol.physicality) {
      throw NonPhysical("symplectic eigenvalue " + std::to_string(f) + " below floor " + std::to_string(floor));
    }
    if (f < floor) f = floor;
  }
  return {std::move(values), kind};
}

template <typename Scalar>
std::vector<double> williamson_values(const ContractionMatrix<Scalar>& d) {
  const int n = d.n_modes();
  if (n == 0) return {};
  // Gamma = D + M/2 is the symmetrised second-moment matrix; it is positive definite for
  // states and for their partial transposes alike.
  Matrix<Scalar> gamma = d.full();
  gamma.topLeftCorner(n, n).diagonal().array() += Scalar(0.5);
  gamma.bottomRightCorner(n, n).diagonal().array() -= Scalar(0.5);
  Eigen::LLT<Matrix<Scalar>> llt(gamma);
  if (llt.info() != Eigen::Success) {
    throw NonPhysical("D + M/2 is not positive definite");
  }
  const Matrix<Scalar> lower = llt.matrixL();
  // L^dag M L is similar to Gamma M and has eigenvalues +-(f + 1/2).
  Matrix<Scalar> s = lower.adjoint() * metric_times(lower);
  s = (0.5 * (s + s.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();  // ascending
  if (ev(n - 1) >= 0.0 || ev(n) <= 0.0) {
    throw NumericalFailure("symplectic spectrum does not split into n positive and n negative values");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = ev(n + k) - 0.5;
  return out;
}

struct PairMatch {
  std::vector<double> kept;
  double residual = 0.0;
};

template <typename Scalar>
PairMatch pair_match(const ContractionMatrix<Scalar>& d, const Tolerances& tol) {
  const int n = d.n_modes();
  PairMatch out;
  if (n == 0) return out;
  const ComplexMatrix dm = d.full().template cast<std::complex<double>>() *
                           metric_times(ComplexMatrix(ComplexMatrix::Identity(2 * n, 2 * n)));
  Eigen::ComplexEigenSolver<ComplexMatrix> es(dm, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
  std::vector<double> discarded;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const std::complex<double> z = es.eigenvalues()(k);
    if (std::abs(z.imag()) > tol.imaginary * std::max(1.0, std::abs(z))) {
      throw NumericalFailure("eigenvalue of D*M has imaginary part " + std::to_string(z.imag()));
    }
    (z.real() >= -0.5 ? out.kept : discarded).push_back(z.real());
  }
  if (out.kept.size() != static_cast<std::size_t>(n)) {
    throw NumericalFailure("could not split the spectrum of D*M into (f, -(1+f)) pairs");
  }
  std::sort(out.kept.begin(), out.kept.end());
  std::sort(discarded.begin(), discarded.end(), std::greater<>());
  for (std::size_t k = 0; k < out.kept.size(); ++k) {
    out.residual = std::max(out.residual, std::abs(discarded[k] + 1.0 + out.kept[k]));
  }
  return out;
}

}  // namespace detail

/// Symplectic eigenvalues f_alpha of D: the 2n eigenvalues of D*M are the pairs
/// {f_alpha, -(1 + f_alpha)}. The spectrum kind follows the kind of `d`.
template <typename Scalar>
SymplecticSpectrum symplectic_eigenvalues(const ContractionMatrix<Scalar>& d, const Tolerances& tol = {},
                                          SymplecticMethod method = SymplecticMethod::Williamson) {
  if (method == SymplecticMethod::Williamson) {
    return detail::validate_spectrum(detail::williamson_values(d), d.kind(), tol);
  }
  auto match = detail::pair_match(d, tol);
  if (match.residual > tol.pairing) {
    throw NumericalFailure("pairing residual " + std::to_string(match.residual) + " exceeds tolerance");
  }
  return detail::validate_spectrum(std::move(match.kept), d.kind(), tol);
}

/// Largest |d_k + 1 + f_k| over the matched eigenvalue pairs of D*M.
template <typename Scalar>
double pairing_residual(const ContractionMatrix<Scalar>& d, const Tolerances& tol = {}) {
  return detail::pair_match(d, tol).residual;
}

/// Contraction matrix of the partial transpose (over `b`) of the state on b u c.
/// Output modes are ordered b first, then c.
template <typename Scalar>
ContractionMatrix<Scalar> partial_transpose(const ContractionMatrix<Scalar>& d, std::span<const int> b,
                                            std::span<const int> c) {
  if (!disjoint(b, c)) throw OverlappingRegions("partial transpose needs disjoint subsystems");
  for (int i : b) {
    if (i < 0 || i >= d.n_modes()) throw OutOfBounds("mode " + std::to_string(i) + " out of range");
  }
  for (int i : c) {
    if (i < 0 || i >= d.n_modes()) throw OutOfBounds("mode " + std::to_string(i) + " out of range");
  }
  const auto nb = static_cast<Eigen::Index>(b.size());
  const auto nc = static_cast<Eigen::Index>(c.size());
  const auto& fp = d.f_plus();
  const auto& fm = d.f_minus();
  Matrix<Scalar> tp(nb + nc, nb + nc), tm(nb + nc, nb + nc);
  tp.topLeftCorner(nb, nb) = block_of(fp, b, b).conjugate();
  tp.topRightCorner(nb, nc) = block_of(fm, b, c).conjugate();
  tp.bottomLeftCorner(nc, nb) = block_of(fm, c, b);
  tp.bottomRightCorner(nc, nc) = block_of(fp, c, c);
  tm.topLeftCorner(nb, nb) = block_of(fm, b, b).conjugate();
  tm.topRightCorner(nb, nc) = block_of(fp, b, c).conjugate();
  tm.bottomLeftCorner(nc, nb) = block_of(fp, c, b);
  tm.bottomRightCorner(nc, nc) = block_of(fm, c, c);
  const SpectrumKind kind =
      d.kind() == SpectrumKind::Reduced ? SpectrumKind::PartialTranspose : SpectrumKind::Reduced;
  return ContractionMatrix<Scalar>(std::move(tp), std::move(tm), kind);
}

/// h(x) = -x log x + (1 + x) log(1 + x), in natural units.
inline double entropy_kernel(double x) {
  if (x <= 0.0) return 0.0;
  return (1.0 + x) * std::log1p(x) - x * std::log(x);
}

/// g(x) = -log(1 + 2x), in natural units.
inline double negativity_kernel(double x) { return -std::log1p(2.0 * x); }

inline EntropyValue entanglement_entropy(const SymplecticSpectrum& spec, LogBase base = LogBase::Two) {
  if (spec.kind != SpectrumKind::Reduced) throw WrongKind("entropy needs a reduced-state spectrum");
  double sum = 0.0;
  for (double f : spec.values) sum += entropy_kernel(f);
  return {in_base(sum, base)};
}

inline NegativityValue log_negativity(const SymplecticSpectrum& spec, LogBase base = LogBase::Two,
                                      const Tolerances& tol = {}) {
  if (spec.kind != SpectrumKind::PartialTranspose) {
    throw WrongKind("log-negativity needs a partial-transpose spectrum");
  }
  constexpr double kFloorOffset = 1e-12;
  NegativityValue out;
  double sum = 0.0;
  for (double f : spec.values) {
    if (f >= 0.0) continue;
    if (f < -0.5 - tol.physicality) throw NonPhysical("partial-transpose eigenvalue below -1/2");
    if (f <= -0.5) {
      f = -0.5 + kFloorOffset;
      out.diverging = true;
    }
    sum += negativity_kernel(f);
  }
  out.value = in_base(sum, base);
  return out;
}

/// 2 sum log(sqrt(f) + sqrt(1 + f)) for a pure global state cut into A and its complement.
inline NegativityValue pure_bipartition_log_negativity(const SymplecticSpectrum& spec,
                                                       LogBase base = LogBase::Two) {
  if (spec.kind != SpectrumKind::Reduced) throw WrongKind("needs a reduced-state spectrum");
  double sum = 0.0;
  for (double f : spec.values) sum += 2.0 * std::asinh(std::sqrt(std::max(f, 0.0)));
  return {in_base(sum, base), false};
}

template <typename Scalar>
SymplecticSpectrum reduced_spectrum(const ContractionMatrix<Scalar>& d, std::span<const int> region,
                                    const Tolerances& tol = {}) {
  return symplectic_eigenvalues(d.restrict_to(region), tol);
}

/// Reduced spectrum of a region of a pure global state. Purity gives
/// D_A M (D_A M + 1) = -D_{A,Ac} M D_{Ac,A} M, whose doubly degenerate eigenvalues are
/// f (1 + f). Working from the cross block keeps f accurate when f << 1, where
/// f = nu - 1/2 from the Williamson route is pure roundoff and sqrt(f) amplifies it.
template <typename Scalar>
SymplecticSpectrum pure_state_reduced_spectrum(const ContractionMatrix<Scalar>& d, std::span<const int> region,
                                               const Tolerances& tol = {}) {
  const int n = d.n_modes();
  const IndexList rest = complement_indices(region, n);
  const auto k = static_cast<Eigen::Index>(region.size());
  if (k == 0) return {{}, SpectrumKind::Reduced};
  if (rest.empty()) return {std::vector<double>(static_cast<std::size_t>(k), 0.0), SpectrumKind::Reduced};
  IndexList rows(region.begin(), region.end()), cols(rest);
  for (int i : region) rows.push_back(i + n);
  for (int i : rest) cols.push_back(i + n);
  const Matrix<Scalar> full = d.full();
  const Matrix<Scalar> cross = block_of(full, std::span<const int>(rows), std::span<const int>(cols));
  Matrix<Scalar> x = -(cross * detail::metric_times(Matrix<Scalar>(cross.adjoint())));
  x.rightCols(k) *= Scalar(-1);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(x.template cast<std::complex<double>>(), false);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
  std::vector<double> prod;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) prod.push_back(es.eigenvalues()(i).real());
  std::sort(prod.begin(), prod.end());
  std::vector<double> values;
  for (Eigen::Index a = 0; a < k; ++a) {
    const double p = 0.5 * (prod[static_cast<std::size_t>(2 * a)] + prod[static_cast<std::size_t>(2 * a + 1)]);
    // f = (sqrt(1 + 4p) - 1) / 2 without the cancellation.
    values.push_back(p >= 0.0 ? 2.0 * p / (1.0 + std::sqrt(1.0 + 4.0 * p)) : p);
  }
  return detail::validate_spectrum(std::move(values), SpectrumKind::Reduced, tol);
}

template <typename Scalar>
SymplecticSpectrum partial_transpose_spectrum(const ContractionMatrix<Scalar>& d, std::span<const int> b,
                                              std::span<const int> c, const Tolerances& tol = {}) {
  return symplectic_eigenvalues(partial_transpose(d, b, c), tol);
}

/// D' = T D T^dag for the Bogoliubov map b' = A b + B b^dag, T = [[A, B], [conj B, conj A]].
/// T must preserve the symplectic metric.
template <typename Scalar>
ContractionMatrix<Scalar> bogoliubov_transform(const ContractionMatrix<Scalar>& d, const Matrix<Scalar>& a,
                                               const Matrix<Scalar>& b, double tol = 1e-10) {
  const int n = d.n_modes();
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
    throw InvalidArgument("Bogoliubov blocks must match the number of modes");
  }
  Matrix<Scalar> t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = a;
  t.topRightCorner(n, n) = b;
  t.bottomLeftCorner(n, n) = b.conjugate();
  t.bottomRightCorner(n, n) = a.conjugate();
  Matrix<Scalar> metric = Matrix<Scalar>::Identity(2 * n, 2 * n);
  metric.bottomRightCorner(n, n) *= Scalar(-1);
  if (max_abs(t * metric * t.adjoint() - metric) > tol) {
    throw InvalidArgument("transformation is not symplectic");
  }
  const Matrix<Scalar> out = t * d.full() * t.adjoint();
  Matrix<Scalar> fp = out.topLeftCorner(n, n);
  Matrix<Scalar> fm = out.topRightCorner(n, n);
  fp = (0.5 * (fp + fp.adjoint())).eval();
  fm = (0.5 * (fm + fm.transpose())).eval();
  return ContractionMatrix<Scalar>(std::move(fp), std::move(fm), d.kind());
}

/// Single-mode rotation b_i -> u b_i - phase * v b_i^dag with u^2 - v^2 = 1 and |phase| = 1.
template <typename Scalar>
ContractionMatrix<Scalar> local_bogoliubov(const ContractionMatrix<Scalar>& d, int mode, double u, double v,
                                           Scalar phase) {
  const int n = d.n_modes();
  if (mode < 0 || mode >= n) throw OutOfBounds("mode out of range");
  Matrix<Scalar> a = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> b = Matrix<Scalar>::Zero(n, n);
  a(mode, mode) = Scalar(u);
  b(mode, mode) = -phase * Scalar(v);
  return bogoliubov_transform(d, a, b);
}

}  // namespace gaussent

#endif  // GAUSSENT_SYMPLECTIC_HPP
