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

#ifndef GAUSSENT_CLOSED_FORM_HPP
#define GAUSSENT_CLOSED_FORM_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "symplectic.hpp"

namespace gaussent {

/// sigma_mu = |Delta-_mu| / (4 lambda), sigma+_mu = |Delta+_mu| / (4 lambda).
struct LinkStrengths {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_plus_x = 0.0;
  double sigma_plus_y = 0.0;

  static LinkStrengths isotropic(double sigma, double sigma_plus = 0.0) {
    return {sigma, sigma, sigma_plus, sigma_plus};
  }

  static LinkStrengths from(const LatticeCouplings& c, double lambda) {
    const double q = 4.0 * lambda;
    return {std::abs(c.delta_minus_x) / q, std::abs(c.delta_minus_y) / q, std::abs(c.delta_plus_x) / q,
            std::abs(c.delta_plus_y) / q};
  }

  bool is_isotropic() const {
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b)); };
    return close(sigma_x, sigma_y) && close(sigma_plus_x, sigma_plus_y);
  }
};

/// 2 log(e): the factor between scaled and plain log-negativities.
inline double negativity_scale(LogBase base) { return 2.0 * log_e(base); }

enum class Geometry { SingleSite, ParallelBlock, TiltedBlock, Checkerboard };

inline const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::SingleSite: return "single_site";
    case Geometry::ParallelBlock: return "parallel_block";
    case Geometry::TiltedBlock: return "tilted_block";
    case Geometry::Checkerboard: return "checkerboard";
  }
  return "?";
}

struct GeometryParams {
  int nx = 1;  // rect / checkerboard width, tilted size n
  int ny = 1;
};

/// Asymptotic singular values of F-_{A, complement}, one entry per border mode.
inline std::vector<double> geometry_singulars(Geometry kind, GeometryParams p, const LinkStrengths& s) {
  const double sx = s.sigma_x, sy = s.sigma_y;
  std::vector<double> out;
  switch (kind) {
    case Geometry::SingleSite:
      out.push_back(std::sqrt(2.0 * (sx * sx + sy * sy)));
      break;
    case Geometry::ParallelBlock:
      if (p.nx < 2 || p.ny < 2) throw InvalidArgument("block sides must be at least 2");
      out.insert(out.end(), static_cast<std::size_t>(2 * (p.nx - 2)), sy);
      out.insert(out.end(), static_cast<std::size_t>(2 * (p.ny - 2)), sx);
      out.insert(out.end(), 4, std::hypot(sx, sy));
      break;
    case Geometry::TiltedBlock: {
      if (p.nx < 2) throw InvalidArgument("tilted block size must be at least 2");
      const int m = 4 * p.nx - 4;
      for (int k = 1; k <= m; ++k) {
        const double c = std::cos(2.0 * std::numbers::pi * k / m);
        out.push_back(std::sqrt(std::max(sx * sx + sy * sy + 2.0 * sx * sy * c, 0.0)));
      }
      break;
    }
    case Geometry::Checkerboard:
      if (p.ny % 2 != 0) throw InvalidArgument("checkerboard needs an even ny");
      for (int ky = 1; ky <= p.ny / 2; ++ky) {
        for (int kx = 1; kx <= p.nx; ++kx) {
          out.push_back(2.0 * std::abs(sx * std::cos(2.0 * std::numbers::pi * kx / p.nx) +
                                       sy * std::cos(2.0 * std::numbers::pi * ky / p.ny)));
        }
      }
      break;
  }
  return out;
}

enum class Evaluation {
  ClosedForm,   // integral forms, isotropic couplings only
  SingularSum,  // explicit sum over geometry_singulars
};

namespace detail {

inline double require_isotropic(const LinkStrengths& s) {
  if (!s.is_isotropic()) throw InvalidArgument("closed forms need isotropic couplings; use the singular sum");
  return s.sigma_x;
}

// -x log(x / e) in natural units.
inline double weak_entropy_term(double x) { return x > 0.0 ? -x * (std::log(x) - 1.0) : 0.0; }

}  // namespace detail

/// Asymptotic entanglement entropy of a complementary cut; n is the block / checkerboard size.
inline EntropyValue asymptotic_entropy(Geometry kind, int n, const LinkStrengths& s, LogBase base = LogBase::Two,
                                       Evaluation eval = Evaluation::ClosedForm) {
  if (eval == Evaluation::SingularSum) {
    double sum = 0.0;
    for (double v : geometry_singulars(kind, {n, n}, s)) sum += detail::weak_entropy_term(v * v);
    return {in_base(sum, base)};
  }
  const double sg = detail::require_isotropic(s);
  const double x = sg * sg;
  if (x == 0.0) return {0.0};
  double v = 0.0;
  switch (kind) {
    case Geometry::SingleSite: v = -4.0 * x * (std::log(4.0 * x) - 1.0); break;
    case Geometry::ParallelBlock: v = -4.0 * n * x * (std::log(x) - 1.0); break;
    case Geometry::TiltedBlock: v = -8.0 * n * x * std::log(x); break;
    case Geometry::Checkerboard: v = -2.0 * n * n * x * (std::log(x) + 1.0); break;
  }
  return {in_base(v, base)};
}

/// Asymptotic log-negativity of a complementary cut.
inline NegativityValue asymptotic_negativity(Geometry kind, int n, const LinkStrengths& s,
                                             LogBase base = LogBase::Two,
                                             Evaluation eval = Evaluation::ClosedForm) {
  double scaled = 0.0;
  if (eval == Evaluation::SingularSum) {
    for (double v : geometry_singulars(kind, {n, n}, s)) scaled += v;
  } else {
    const double sg = detail::require_isotropic(s);
    const double pi = std::numbers::pi;
    switch (kind) {
      case Geometry::SingleSite: scaled = 2.0 * sg; break;
      case Geometry::ParallelBlock: scaled = 4.0 * n * sg; break;
      case Geometry::TiltedBlock: scaled = 16.0 / pi * n * sg; break;
      case Geometry::Checkerboard: scaled = 8.0 * n * n / (pi * pi) * sg; break;
    }
  }
  return {scaled * negativity_scale(base), false};
}

/// Finite n x n parallel block with its four corners counted separately.
inline EntropyValue corner_corrected_entropy(int n, double sigma, LogBase base = LogBase::Two) {
  const double x = sigma * sigma;
  return {in_base(4.0 * (n - 1) * detail::weak_entropy_term(x) + detail::weak_entropy_term(4.0 * x), base)};
}

inline NegativityValue corner_corrected_negativity(int n, double sigma, LogBase base = LogBase::Two) {
  return {(4.0 * (n - 1) * sigma + 4.0 * (std::numbers::sqrt2 - 1.0) * sigma) * negativity_scale(base), false};
}

/// L border modes, m broken links per mode, geometric class j.
struct GeometryForm {
  double L = 1.0;
  double m = 1.0;
  int j = 0;

  static constexpr double alpha = std::numbers::e / 2.0;
  static constexpr double beta = 2.0 * std::numbers::sqrt2 / std::numbers::pi;

  static GeometryForm of(Geometry kind, int n) {
    switch (kind) {
      case Geometry::SingleSite: return {1.0, 4.0, 0};
      case Geometry::ParallelBlock: return {4.0 * n, 1.0, 0};
      case Geometry::TiltedBlock: return {4.0 * n, 2.0, 1};
      case Geometry::Checkerboard: return {0.5 * n * n, 4.0, 2};
    }
    return {};
  }

  double area_2() const { return L * m; }
  double area_1() const { return L * std::sqrt(m) * std::pow(beta, j); }
};

struct GenericFormValue {
  EntropyValue entropy;
  NegativityValue negativity;
  double area_2 = 0.0;
  double area_1 = 0.0;
};

/// Entropy -L m sigma^2 log(alpha^j m sigma^2 / e) and scaled negativity L sqrt(m) beta^j sigma.
inline GenericFormValue generic_form(const GeometryForm& gf, double sigma, LogBase base = LogBase::Two) {
  GenericFormValue out;
  const double x = sigma * sigma;
  const double ent =
      x > 0.0 ? -gf.L * gf.m * x * (gf.j * std::log(GeometryForm::alpha) + std::log(gf.m * x) - 1.0) : 0.0;
  out.entropy = {in_base(ent, base)};
  out.negativity = {gf.area_1() * sigma * negativity_scale(base), false};
  out.area_2 = gf.area_2();
  out.area_1 = gf.area_1();
  return out;
}

struct PairNegativityOptions {
  bool edge_correction = false;  // add -2 sigma^2 (scaled units) to separated forms
  bool discrete = false;         // sum over contact modes instead of the integral form
};

struct PairNegativity {
  NegativityValue value;
  double scaled = 0.0;            // value / (2 log e)
  bool vanishes = false;          // zero at this order (s >= 2 or validity inequality violated)
};

namespace detail {

inline double tilted_sigma(const LinkStrengths& s, double k, double n) {
  const double c = std::cos(2.0 * std::numbers::pi * k / n);
  return std::sqrt(std::max(s.sigma_x * s.sigma_x + s.sigma_y * s.sigma_y + 2.0 * s.sigma_x * s.sigma_y * c, 0.0));
}

// -f~_k for tilted blocks at one-site separation; `second` doubles the sigma_k^2 term for lines.
inline double tilted_separated_mode(const LinkStrengths& s, int k, int n, double second) {
  const double ax = s.sigma_plus_x * s.sigma_x;
  const double ay = s.sigma_plus_y * s.sigma_y;
  const double axy = s.sigma_plus_x * s.sigma_y + s.sigma_plus_y * s.sigma_x;
  const double t = 2.0 * std::numbers::pi * k / n;
  const double rad = axy * axy + ax * ax + ay * ay + 2.0 * axy * (ax + ay) * std::cos(t) + 2.0 * ax * ay * std::cos(2.0 * t);
  const double sk = tilted_sigma(s, k, n);
  return 2.0 * std::sqrt(std::max(rad, 0.0)) - second * sk * sk;
}

}  // namespace detail

/// Asymptotic log-negativity between two blocks with n contact sites. depth = 1 means lines.
inline PairNegativity pair_negativity(PairGeometry geometry, int n, const LinkStrengths& s, int separation, int depth,
                                      LogBase base = LogBase::Two, PairNegativityOptions opt = {}) {
  if (separation < 0) throw InvalidSeparation("separation must be non-negative");
  if (n < 1 || depth < 1) throw InvalidArgument("pair size and depth must be positive");
  PairNegativity out;
  if (separation >= 2) {
    out.vanishes = true;
    return out;
  }
  const bool integral = !opt.discrete && s.is_isotropic();
  double scaled = 0.0;
  if (separation == 0) {
    if (geometry == PairGeometry::Parallel) {
      scaled = n * s.sigma_x;
    } else if (integral) {
      scaled = 4.0 / std::numbers::pi * n * s.sigma_x;
    } else {
      for (int k = 1; k <= n; ++k) scaled += detail::tilted_sigma(s, k, n);
    }
  } else {
    const double second = depth == 1 ? 2.0 : 1.0;
    if (geometry == PairGeometry::Parallel) {
      scaled = n * (2.0 * s.sigma_plus_x * s.sigma_x - second * s.sigma_x * s.sigma_x);
    } else if (integral) {
      const double sg = s.sigma_x;
      scaled = 2.0 * n * sg * (2.0 * s.sigma_plus_x - second * sg);
    } else {
      for (int k = 1; k <= n; ++k) scaled += std::max(detail::tilted_separated_mode(s, k, n, second), 0.0);
    }
    if (opt.edge_correction) scaled -= 2.0 * s.sigma_x * s.sigma_x;
    if (scaled <= 0.0) {
      out.vanishes = true;
      scaled = 0.0;
    }
  }
  out.scaled = scaled;
  out.value = {scaled * negativity_scale(base), false};
  return out;
}

/// sigma_k for a banded Toeplitz matrix (F)_ij = f(j - i), f given on l = 0..L-1:
/// sigma_k^2 = sum_l g(l) exp(2 pi i k l / n), g(l) = sum_k f(k) conj(f(k + l)), k = 0..n-1.
/// Exact for the circulant completion, up to edge effects otherwise.
template <typename T>
std::vector<double> toeplitz_fourier_singulars(const std::vector<T>& f, int n) {
  if (n < 1) throw InvalidArgument("size must be positive");
  const auto len = static_cast<int>(f.size());
  std::vector<std::complex<double>> g(static_cast<std::size_t>(len));
  for (int l = 0; l < len; ++l) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k + l < len; ++k) {
      acc += std::complex<double>(f[static_cast<std::size_t>(k)]) *
             std::conj(std::complex<double>(f[static_cast<std::size_t>(k + l)]));
    }
    g[static_cast<std::size_t>(l)] = acc;
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double s2 = len > 0 ? g[0].real() : 0.0;
    for (int l = 1; l < len; ++l) {
      const double t = 2.0 * std::numbers::pi * k * l / n;
      s2 += 2.0 * std::real(g[static_cast<std::size_t>(l)] * std::complex<double>(std::cos(t), std::sin(t)));
    }
    out[static_cast<std::size_t>(k)] = std::sqrt(std::max(s2, 0.0));
  }
  return out;
}

// Fully connected model: Delta+-_ij = (1 - delta_ij) Delta+- / (n - 1), Delta+- = (Delta_x +- Delta_y) / 2.

/// Exact off-diagonal F+_1 in the local basis where F+-_0 = 0.
inline double lmg_f1(int n, double lambda, double delta_x, double delta_y) {
  if (n < 2) throw InvalidArgument("fully connected model needs at least two modes");
  const double a0 = (lambda - delta_x) * (lambda - delta_y);
  const double a1 = (lambda + delta_x / (n - 1)) * (lambda + delta_y / (n - 1));
  if (lambda <= std::max(delta_x, delta_y) || lambda + std::min(delta_x, delta_y) / (n - 1) <= 0.0 || a0 <= 0.0 ||
      a1 <= 0.0) {
    throw Unstable("fully connected model is unstable at this lambda");
  }
  const double w0 = std::sqrt(a0);
  const double w1 = std::sqrt(a1);
  const double wbar = (w0 + (n - 1) * w1) / n;
  return n * (lambda * lambda - wbar * wbar) / (4.0 * (n - 1) * w0 * w1);
}

/// |F-_1| from the pure-state constraint (F+_1)^2 + F+_1 / n = (F-_1)^2.
inline double lmg_f1_minus(int n, double f1_plus) { return std::sqrt(f1_plus * f1_plus + f1_plus / n); }

/// Leading order F-_1 ~ Delta- / (2 (n - 1) lambda).
inline double lmg_weak_f1_minus(int n, double lambda, double delta_minus) {
  return delta_minus / (2.0 * (n - 1) * lambda);
}

/// The single non-zero symplectic eigenvalue of an n_A-mode subsystem.
inline double lmg_reduced_eigenvalue(int n, int n_a, double f1_plus) {
  if (n_a < 0 || n_a > n) throw OutOfBounds("subsystem size out of range");
  return std::sqrt(0.25 + f1_plus * n_a * (n - n_a) / n) - 0.5;
}

struct LmgPairCoefficients {
  double beta = 0.0;
  double gamma = 0.0;
};

inline LmgPairCoefficients lmg_pair_coefficients(int n, int n_b, int n_c) {
  if (n_b < 0 || n_c < 0 || n_b + n_c > n) throw OutOfBounds("subsystem sizes out of range");
  LmgPairCoefficients c;
  c.beta = static_cast<double>(n_b) * n_c / n;
  c.gamma = 0.5 * (n_b + n_c) * (n - n_b - n_c) / n + 2.0 * c.beta;
  return c;
}

/// The single negative partial-transpose eigenvalue for disjoint subsystems of sizes n_b, n_c.
inline double lmg_pt_eigenvalue(int n, int n_b, int n_c, double f1_plus) {
  const auto c = lmg_pair_coefficients(n, n_b, n_c);
  const double inner = std::sqrt(f1_plus * (c.beta + c.gamma * c.gamma * f1_plus));
  return std::sqrt(std::max(0.25 + c.gamma * f1_plus - inner, 0.0)) - 0.5;
}

/// sqrt(n_b n_c) |F-_1|.
inline double lmg_weak_sigma(int n_b, int n_c, double f1_minus) {
  return std::sqrt(static_cast<double>(n_b) * n_c) * std::abs(f1_minus);
}

/// n_A (n - n_A) (F-_1)^2.
inline double lmg_weak_reduced(int n, int n_a, double f1_minus) {
  return static_cast<double>(n_a) * (n - n_a) * f1_minus * f1_minus;
}

/// -sqrt(n_b n_c) |F-_1| + |F-_1|^2 (n_b (n - n_b) + n_c (n - n_c)) / 2.
inline double lmg_weak_pt(int n, int n_b, int n_c, double f1_minus) {
  const double a = std::abs(f1_minus);
  return -lmg_weak_sigma(n_b, n_c, a) +
         0.5 * a * a * (static_cast<double>(n_b) * (n - n_b) + static_cast<double>(n_c) * (n - n_c));
}

struct SigmaPair {
  double sigma1 = 0.0;  // non-degenerate value
  double sigma0 = 0.0;  // (L - 1)-fold degenerate value
};

/// Exact symplectic eigenvalues of an L-site block with F+-_ij = F+-_0 delta_ij + F+-_1.
template <typename T>
SigmaPair lmg_reduced_sigma_pair(int l, double f0_plus, T f0_minus, double f1_plus, T f1_minus,
                                 const Tolerances& tol = {}) {
  const double r1 = std::pow(f0_plus + l * f1_plus + 0.5, 2) - std::norm(f0_minus + static_cast<double>(l) * f1_minus);
  const double r0 = std::pow(f0_plus + 0.5, 2) - std::norm(f0_minus);
  if (r1 < -tol.physicality || r0 < -tol.physicality) throw NonPhysical("negative radicand");
  return {std::sqrt(std::max(r1, 0.0)) - 0.5, std::sqrt(std::max(r0, 0.0)) - 0.5};
}

}  // namespace gaussent

#endif  // GAUSSENT_CLOSED_FORM_HPP
