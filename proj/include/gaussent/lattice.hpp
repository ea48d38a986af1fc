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

#ifndef GAUSSENT_LATTICE_HPP
#define GAUSSENT_LATTICE_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "quadratic_model.hpp"

namespace gaussent {

enum class Boundary { Open, Cyclic };

/// nx x ny square lattice, site index x + nx * y.
struct Lattice2D {
  int nx = 1;
  int ny = 1;
  Boundary boundary = Boundary::Open;

  Lattice2D() = default;
  Lattice2D(int nx_, int ny_, Boundary b = Boundary::Open) : nx(nx_), ny(ny_), boundary(b) {
    if (nx < 1 || ny < 1) throw InvalidArgument("lattice dimensions must be positive");
  }

  int size() const { return nx * ny; }
  bool contains(int x, int y) const { return x >= 0 && x < nx && y >= 0 && y < ny; }
  int index(int x, int y) const {
    if (!contains(x, y)) {
      throw OutOfBounds("site (" + std::to_string(x) + ", " + std::to_string(y) + ") outside lattice");
    }
    return x + nx * y;
  }
  int x_of(int i) const { return i % nx; }
  int y_of(int i) const { return i / nx; }
};

enum class Axis { X, Y };
enum class AdjacencyKind { FirstNeighbor, FullyConnected };

/// Binary symmetric coupling pattern with zero diagonal.
struct AdjacencyMatrix {
  RealMatrix m;
  int size() const { return static_cast<int>(m.rows()); }
};

/// Links along one axis only. Wrap-around links are added for cyclic lattices;
/// a link that would join a site to itself (length-1 cyclic axis) is dropped.
inline AdjacencyMatrix axis_adjacency(const Lattice2D& lat, Axis axis) {
  const int n = lat.size();
  AdjacencyMatrix a{RealMatrix::Zero(n, n)};
  for (int y = 0; y < lat.ny; ++y) {
    for (int x = 0; x < lat.nx; ++x) {
      int xx = x + (axis == Axis::X ? 1 : 0);
      int yy = y + (axis == Axis::Y ? 1 : 0);
      if (lat.boundary == Boundary::Cyclic) {
        xx %= lat.nx;
        yy %= lat.ny;
      }
      if (!lat.contains(xx, yy)) continue;
      const int i = lat.index(x, y);
      const int j = lat.index(xx, yy);
      if (i != j) a.m(i, j) = a.m(j, i) = 1.0;
    }
  }
  return a;
}

inline AdjacencyMatrix build_adjacency(const Lattice2D& lat, AdjacencyKind kind = AdjacencyKind::FirstNeighbor) {
  const int n = lat.size();
  if (kind == AdjacencyKind::FullyConnected) {
    AdjacencyMatrix a{RealMatrix::Ones(n, n)};
    a.m.diagonal().setZero();
    return a;
  }
  AdjacencyMatrix a{axis_adjacency(lat, Axis::X).m + axis_adjacency(lat, Axis::Y).m};
  a.m = a.m.cwiseMin(1.0);
  return a;
}

/// First-neighbor couplings per axis; each link carries Delta_mu / 2.
struct LatticeCouplings {
  double delta_plus_x = 0.0;
  double delta_plus_y = 0.0;
  double delta_minus_x = 0.0;
  double delta_minus_y = 0.0;

  static LatticeCouplings isotropic(double delta_plus, double delta_minus) {
    return {delta_plus, delta_plus, delta_minus, delta_minus};
  }

  /// sum_mu (|Delta+_mu| + |Delta-_mu|); exact for cyclic isotropic lattices.
  double lambda_c_estimate() const {
    return std::abs(delta_plus_x) + std::abs(delta_plus_y) + std::abs(delta_minus_x) + std::abs(delta_minus_y);
  }
};

inline CouplingTemplate<double> lattice_couplings(const Lattice2D& lat, const LatticeCouplings& c) {
  const RealMatrix mx = axis_adjacency(lat, Axis::X).m;
  const RealMatrix my = axis_adjacency(lat, Axis::Y).m;
  return {0.5 * (c.delta_plus_x * mx + c.delta_plus_y * my), 0.5 * (c.delta_minus_x * mx + c.delta_minus_y * my)};
}

/// Ordered list of distinct sites.
class Region {
 public:
  Region() = default;
  Region(IndexList sites, int n_sites) : sites_(std::move(sites)) {
    std::vector<char> seen(static_cast<std::size_t>(std::max(n_sites, 0)), 0);
    for (int i : sites_) {
      if (i < 0 || i >= n_sites) throw OutOfBounds("site " + std::to_string(i) + " out of range");
      if (seen[static_cast<std::size_t>(i)]) throw InvalidArgument("duplicate site " + std::to_string(i));
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }

  const IndexList& sites() const { return sites_; }
  std::span<const int> span() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }

  friend bool operator==(const Region& a, const Region& b) { return a.sites_ == b.sites_; }

 private:
  IndexList sites_;
};

struct RegionPair {
  Region b;
  Region c;
};

inline Region single_site(const Lattice2D& lat, int x, int y) { return Region({lat.index(x, y)}, lat.size()); }

inline Region rect_block(const Lattice2D& lat, int x0, int y0, int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("block dimensions must be positive");
  IndexList s;
  for (int y = y0; y < y0 + height; ++y) {
    for (int x = x0; x < x0 + width; ++x) s.push_back(lat.index(x, y));
  }
  return Region(std::move(s), lat.size());
}

/// Diamond |x - cx| + |y - cy| <= n - 1; border ring first, each ring walked counter-clockwise
/// from the +x corner.
inline Region tilted_block(const Lattice2D& lat, int cx, int cy, int n) {
  if (n < 1) throw InvalidArgument("tilted block size must be positive");
  struct Site {
    int ring;
    double angle;
    int index;
  };
  std::vector<Site> all;
  for (int dy = -(n - 1); dy <= n - 1; ++dy) {
    for (int dx = -(n - 1); dx <= n - 1; ++dx) {
      const int r = std::abs(dx) + std::abs(dy);
      if (r > n - 1) continue;
      double ang = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
      if (ang < 0) ang += 2.0 * std::numbers::pi;
      all.push_back({n - 1 - r, ang, lat.index(cx + dx, cy + dy)});
    }
  }
  std::sort(all.begin(), all.end(), [](const Site& a, const Site& b) {
    return a.ring != b.ring ? a.ring < b.ring : a.angle < b.angle;
  });
  IndexList s;
  for (const auto& site : all) s.push_back(site.index);
  return Region(std::move(s), lat.size());
}

inline Region checkerboard(const Lattice2D& lat, int parity) {
  if (parity != 0 && parity != 1) throw InvalidArgument("checkerboard parity must be 0 or 1");
  IndexList s;
  for (int y = 0; y < lat.ny; ++y) {
    for (int x = 0; x < lat.nx; ++x) {
      if ((x + y) % 2 == parity) s.push_back(lat.index(x, y));
    }
  }
  return Region(std::move(s), lat.size());
}

inline Region complement(const Lattice2D& lat, const Region& a) {
  return Region(complement_indices(a.span(), lat.size()), lat.size());
}

enum class PairGeometry { Parallel, Tilted };

inline const char* to_string(PairGeometry g) { return g == PairGeometry::Parallel ? "parallel" : "tilted"; }

/// Two blocks facing each other across `separation` empty columns (parallel) or
/// diagonals (tilted). Each contact surface holds n sites; `depth` counts the
/// columns/diagonals of each block; tilted diagonals alternate between n and n - 1 sites.
/// The pair is centred in the lattice and both blocks list their contact line first.
inline RegionPair block_pair(const Lattice2D& lat, PairGeometry geometry, int n, int depth, int separation) {
  if (n < 1 || depth < 1) throw InvalidArgument("pair size and depth must be positive");
  if (separation < 0) throw InvalidSeparation("separation must be non-negative");
  IndexList b, c;
  if (geometry == PairGeometry::Parallel) {
    const int x0 = (lat.nx - (2 * depth + separation)) / 2;
    const int y0 = (lat.ny - n) / 2;
    for (int k = 0; k < depth; ++k) {
      for (int y = y0; y < y0 + n; ++y) {
        b.push_back(lat.index(x0 + depth - 1 - k, y));
        c.push_back(lat.index(x0 + depth + separation + k, y));
      }
    }
  } else {
    // Diagonal coordinates u = x + y, v = x - y; a site exists where u and v share parity.
    const int u_mid2 = (lat.nx - 1) + (lat.ny - 1);  // twice the centre in u
    const int v_mid = ((lat.nx - 1) - (lat.ny - 1)) / 2;
    const int c_line = (u_mid2 - separation - 1) / 2;  // last diagonal of B
    int v0 = v_mid - (n - 1);
    if (((v0 - c_line) % 2 + 2) % 2 != 0) --v0;
    auto add_line = [&](IndexList& out, int u, int vstart) {
      for (int v = vstart; v <= vstart + 2 * n - 2; ++v) {
        if (((u - v) % 2 + 2) % 2 != 0) continue;
        out.push_back(lat.index((u + v) / 2, (u - v) / 2));
      }
    };
    const int vc = v0 + (1 + separation) % 2;
    for (int k = 0; k < depth; ++k) {
      add_line(b, c_line - k, v0);
      add_line(c, c_line + 1 + separation + k, vc);
    }
  }
  RegionPair out{Region(std::move(b), lat.size()), Region(std::move(c), lat.size())};
  if (!disjoint(out.b.span(), out.c.span())) throw OverlappingRegions("pair blocks overlap");
  return out;
}

/// Two parallel lines of n sites; a pair of blocks of depth 1.
inline RegionPair line_pair(const Lattice2D& lat, PairGeometry geometry, int n, int separation) {
  return block_pair(lat, geometry, n, 1, separation);
}

/// Cross-adjacency block M_{A, complement}.
inline RealMatrix cross_block(const AdjacencyMatrix& m, const Region& a) {
  const IndexList rest = complement_indices(a.span(), m.size());
  return block_of(m.m, a.span(), std::span<const int>(rest));
}

/// |dA|_2 = Tr[M_{A,Ac} M_{Ac,A}], the number of cut links.
inline double boundary_measure_2(const AdjacencyMatrix& m, const Region& a) {
  return cross_block(m, a).squaredNorm();
}

struct BoundaryMeasure1 {
  double trace_norm = 0.0;   // Tr sqrt(M_{A,Ac} M_{Ac,A})
  double sqrt_degree = 0.0;  // sum_i sqrt(n_i), exact when no outside site touches two inside sites
};

inline BoundaryMeasure1 boundary_measure_1(const AdjacencyMatrix& m, const Region& a) {
  const RealMatrix cb = cross_block(m, a);
  BoundaryMeasure1 out;
  for (double s : singular_values(cb)) out.trace_norm += s;
  for (Eigen::Index i = 0; i < cb.rows(); ++i) out.sqrt_degree += std::sqrt(cb.row(i).sum());
  return out;
}

/// |dB ∩ dC|_1 = ||M_{B,C}||_1.
inline double boundary_measure_1(const AdjacencyMatrix& m, const Region& b, const Region& c) {
  return matrix_norm(block_of(m.m, b.span(), c.span()), 1);
}

}  // namespace gaussent

#endif  // GAUSSENT_LATTICE_HPP
