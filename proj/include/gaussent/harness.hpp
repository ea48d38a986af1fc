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

#ifndef GAUSSENT_HARNESS_HPP
#define GAUSSENT_HARNESS_HPP

#include <Eigen/Core>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "closed_form.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "quadratic_model.hpp"
#include "scenario.hpp"
#include "symplectic.hpp"
#include "weak_coupling.hpp"

namespace gaussent {

struct ResultRow {
  std::string scenario;
  std::string partition;
  Method method = Method::Exact;
  double ratio = std::nan("");
  double lambda = 0.0;
  std::optional<double> sigma;
  std::optional<double> entropy;
  std::optional<double> negativity;
  std::optional<double> measure_1;
  std::optional<double> measure_2;
  std::string flags;
  double wall_seconds = 0.0;  // JSON only; the CSV must not depend on timing
};

struct PointTiming {
  double lambda = 0.0;
  double seconds = 0.0;
};

struct RunResult {
  std::vector<ResultRow> rows;
  std::vector<PointTiming> timings;
  double total_seconds = 0.0;
  int threads = 1;
};

/// Working-set estimate: a handful of dense 2n x 2n double matrices per concurrent solve.
inline constexpr double kWorkspaceMatrices = 8.0;

inline double memory_estimate_gib(int n_modes, int threads) {
  const double dim = 2.0 * n_modes;
  return threads * kWorkspaceMatrices * dim * dim * sizeof(double) / (1024.0 * 1024.0 * 1024.0);
}

namespace detail {

inline void add_flag(std::string& flags, const std::string& f) {
  if (!flags.empty()) flags += '|';
  flags += f;
}

struct MeasurePair {
  std::optional<double> m1, m2;
};

inline MeasurePair region_measures(const AdjacencyMatrix& adj, const Region& a) {
  return {boundary_measure_1(adj, a).trace_norm, boundary_measure_2(adj, a)};
}

inline MeasurePair pair_measures(const AdjacencyMatrix& adj, const RegionPair& p) {
  const RealMatrix cross = block_of(adj.m, p.b.span(), p.c.span());
  return {matrix_norm(cross, 1), cross.squaredNorm()};
}

inline std::optional<double> lattice_sigma(const Scenario& s, double lambda) {
  if (s.kind != LatticeKind::Square) return std::nullopt;
  return LinkStrengths::from(s.couplings, lambda).sigma_x;
}

// Closed-form row for one partition, if the geometry is one the closed forms cover.
inline std::optional<ResultRow> closed_form_row(const Scenario& s, const Partition& p, double lambda, LogBase base) {
  ResultRow row;
  if (s.kind == LatticeKind::FullyConnected) {
    const int n = s.n_modes();
    const double f1 = lmg_f1(n, lambda, s.delta_x, s.delta_y);
    if (p.is_pair()) {
      const double ft = lmg_pt_eigenvalue(n, p.pair().b.size(), p.pair().c.size(), f1);
      row.negativity = log_negativity({{ft}, SpectrumKind::PartialTranspose}, base).value;
    } else {
      const double f = lmg_reduced_eigenvalue(n, p.region().size(), f1);
      const SymplecticSpectrum spec{{f}, SpectrumKind::Reduced};
      row.entropy = entanglement_entropy(spec, base).value;
      row.negativity = pure_bipartition_log_negativity(spec, base).value;
    }
    return row;
  }
  if (s.kind != LatticeKind::Square) return std::nullopt;
  const LinkStrengths ls = LinkStrengths::from(s.couplings, lambda);
  if (p.pair_shape) {
    const auto& ps = *p.pair_shape;
    const auto pn = pair_negativity(ps.geometry, ps.n, ls, ps.separation, ps.depth, base);
    row.negativity = pn.value.value;
    if (pn.vanishes) add_flag(row.flags, "vanishes");
    return row;
  }
  if (!p.region_shape) return std::nullopt;
  const auto& rs = *p.region_shape;
  const bool iso = ls.is_isotropic();
  switch (rs.geometry) {
    case Geometry::SingleSite:
    case Geometry::TiltedBlock: {
      const auto eval = iso ? Evaluation::ClosedForm : Evaluation::SingularSum;
      row.entropy = asymptotic_entropy(rs.geometry, rs.nx, ls, base, eval).value;
      row.negativity = asymptotic_negativity(rs.geometry, rs.nx, ls, base, eval).value;
      break;
    }
    case Geometry::ParallelBlock:
      if (iso && rs.nx == rs.ny) {
        row.entropy = asymptotic_entropy(rs.geometry, rs.nx, ls, base).value;
        row.negativity = asymptotic_negativity(rs.geometry, rs.nx, ls, base).value;
      } else {
        double ent = 0.0, neg = 0.0;
        for (double v : geometry_singulars(Geometry::ParallelBlock, {rs.nx, rs.ny}, ls)) {
          ent += weak_entropy_term(v * v);
          neg += v;
        }
        row.entropy = in_base(ent, base);
        row.negativity = neg * negativity_scale(base);
      }
      break;
    case Geometry::Checkerboard: {
      if (iso) {
        const GeometryForm gf{0.5 * rs.nx * rs.ny, 4.0, 2};
        const auto g = generic_form(gf, ls.sigma_x, base);
        row.entropy = g.entropy.value;
        row.negativity = g.negativity.value;
      } else {
        double ent = 0.0, neg = 0.0;
        for (double v : geometry_singulars(Geometry::Checkerboard, {rs.nx, rs.ny}, ls)) {
          ent += weak_entropy_term(v * v);
          neg += v;
        }
        row.entropy = in_base(ent, base);
        row.negativity = neg * negativity_scale(base);
      }
      break;
    }
  }
  return row;
}

// All rows of one sweep point, in partition then method order.
inline std::vector<ResultRow> run_point(const Scenario& s, const std::vector<MeasurePair>& measures, const SweepPoint& pt,
                                        double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const LogBase base = s.log_base;
  const bool need_state =
      std::any_of(s.methods.begin(), s.methods.end(), [](Method m) { return m != Method::ClosedForm; });
  std::optional<ContractionMatrix<double>> d;
  if (need_state) d = solve_ground_state(coupling_template(s).at(pt.lambda)).contractions;
  WeakCouplingOptions wopt;
  wopt.counterterm = s.kind == LatticeKind::Custom ? CountertermForm::Definition : CountertermForm::Environment;

  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < s.partitions.size(); ++k) {
    const Partition& p = s.partitions[k];
    for (Method m : s.methods) {
      ResultRow row;
      const auto ts = std::chrono::steady_clock::now();
      if (m == Method::Exact) {
        if (p.is_pair()) {
          const auto spec = partial_transpose_spectrum(*d, p.pair().b.span(), p.pair().c.span());
          const auto nv = log_negativity(spec, base);
          row.negativity = nv.value;
          if (nv.diverging) add_flag(row.flags, "diverging");
        } else {
          const auto spec = pure_state_reduced_spectrum(*d, p.region().span());
          row.entropy = entanglement_entropy(spec, base).value;
          row.negativity = pure_bipartition_log_negativity(spec, base).value;
        }
      } else if (m == Method::Weak) {
        if (p.is_pair()) {
          const auto est = approx_pt_spectrum(*d, p.pair().b.span(), p.pair().c.span(), 1, wopt);
          row.negativity = approx_log_negativity(est, base).value;
          if (est.degraded) add_flag(row.flags, "degraded");
        } else {
          const auto est = approx_reduced_spectrum(*d, p.region().span(), wopt);
          row.entropy = approx_entropy(est, base).value;
          row.negativity = approx_log_negativity(est, base).value;
          if (est.degraded) add_flag(row.flags, "degraded");
        }
      } else {
        auto cf = closed_form_row(s, p, pt.lambda, base);
        if (!cf) continue;
        row = std::move(*cf);
      }
      row.scenario = s.id;
      row.partition = p.id;
      row.method = m;
      row.lambda = pt.lambda;
      row.ratio = pt.ratio;
      row.sigma = lattice_sigma(s, pt.lambda);
      row.measure_1 = measures[k].m1;
      row.measure_2 = measures[k].m2;
      row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - ts).count();
      rows.push_back(std::move(row));
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rows;
}

}  // namespace detail

/// Evaluate every (sweep point, partition, method). Points run in parallel; the row order is
/// fixed by the grid, partition and method order regardless of thread count.
inline RunResult run(const Scenario& s) {
  const int n = s.n_modes();
  const int threads = std::max(1, std::min<int>(s.threads, static_cast<int>(s.sweep.size())));
  const double need = memory_estimate_gib(n, threads);
  if (need > s.memory_cap_gib) {
    throw MemoryCap("estimated " + std::to_string(need) + " GiB exceeds the cap of " +
                    std::to_string(s.memory_cap_gib) + " GiB");
  }
  const auto points = resolve_sweep(s);
  const AdjacencyMatrix adj = measure_adjacency(s);
  std::vector<detail::MeasurePair> measures;
  for (const auto& p : s.partitions) {
    measures.push_back(p.is_pair() ? detail::pair_measures(adj, p.pair()) : detail::region_measures(adj, p.region()));
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<ResultRow>> per_point(points.size());
  std::vector<double> seconds(points.size(), 0.0);
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        per_point[i] = detail::run_point(s, measures, points[i], seconds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  RunResult out;
  out.threads = threads;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.rows.insert(out.rows.end(), per_point[i].begin(), per_point[i].end());
    out.timings.push_back({points[i].lambda, seconds[i]});
  }
  out.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

inline std::optional<double> safe_ratio(const std::optional<double>& num, const std::optional<double>& den) {
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

inline const char* kCsvHeader =
    "scenario,partition,method,lambda_ratio,lambda,sigma,entropy,log_negativity,measure_1,measure_2,"
    "entropy_per_measure_2,negativity_per_measure_2,negativity_per_measure_1,flags";

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.partition << ',' << to_string(r.method) << ',' << format_double(r.ratio) << ','
       << format_double(r.lambda) << ',' << format_optional(r.sigma) << ',' << format_optional(r.entropy) << ','
       << format_optional(r.negativity) << ',' << format_optional(r.measure_1) << ','
       << format_optional(r.measure_2) << ',' << format_optional(safe_ratio(r.entropy, r.measure_2)) << ','
       << format_optional(safe_ratio(r.negativity, r.measure_2)) << ','
       << format_optional(safe_ratio(r.negativity, r.measure_1)) << ',' << r.flags << '\n';
  }
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json rows_json(const Scenario& s, const RunResult& res) {
  json rows = json::array();
  for (const auto& r : res.rows) {
    rows.push_back({{"scenario", r.scenario},
                    {"partition", r.partition},
                    {"method", to_string(r.method)},
                    {"lambda_ratio", std::isnan(r.ratio) ? json(nullptr) : json(r.ratio)},
                    {"lambda", r.lambda},
                    {"sigma", optional_json(r.sigma)},
                    {"entropy", optional_json(r.entropy)},
                    {"log_negativity", optional_json(r.negativity)},
                    {"measure_1", optional_json(r.measure_1)},
                    {"measure_2", optional_json(r.measure_2)},
                    {"entropy_per_measure_2", optional_json(safe_ratio(r.entropy, r.measure_2))},
                    {"negativity_per_measure_2", optional_json(safe_ratio(r.negativity, r.measure_2))},
                    {"negativity_per_measure_1", optional_json(safe_ratio(r.negativity, r.measure_1))},
                    {"flags", r.flags},
                    {"wall_seconds", r.wall_seconds}});
  }
  return json{{"scenario", s.id}, {"log_base", to_string(s.log_base)}, {"rows", rows}};
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string config_hash(const Scenario& s) {
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(s.source.dump());
  return ss.str();
}

inline json manifest_json(const Scenario& s, const RunResult& res) {
  json points = json::array();
  for (const auto& t : res.timings) points.push_back({{"lambda", t.lambda}, {"seconds", t.seconds}});
  return json{{"scenario", s.id},
              {"config_hash", config_hash(s)},
              {"versions",
               {{"gaussent", kVersion},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                             std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                             std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                {"compiler", __VERSION__}}},
              {"threads", res.threads},
              {"log_base", to_string(s.log_base)},
              {"rows", res.rows.size()},
              {"outputs", {"results.csv", "results.json", "manifest.json"}},
              {"timings", {{"total_seconds", res.total_seconds}, {"points", points}}}};
}

/// Write results.csv, results.json and manifest.json into `dir`.
inline void write_outputs(const std::filesystem::path& dir, const Scenario& s, const RunResult& res) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "results.csv", std::ios::binary);
    write_csv(csv, res.rows);
  }
  std::ofstream(dir / "results.json", std::ios::binary) << rows_json(s, res).dump(2) << '\n';
  std::ofstream(dir / "manifest.json", std::ios::binary) << manifest_json(s, res).dump(2) << '\n';
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline void print_report(std::ostream& os, const VerifyReport& r) {
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual=" << std::scientific << std::setprecision(3)
       << c.value << "  limit=" << c.threshold << std::defaultfloat << '\n';
  }
  os << (r.ok() ? "all invariants hold" : "invariant failure") << '\n';
}

/// Invariant suite on the exact ground state of every sweep point.
inline VerifyReport verify(const Scenario& s, const Tolerances& tol = {}) {
  VerifyReport rep;
  auto add = [&](std::string name, double value, double limit) {
    rep.checks.push_back({std::move(name), value, limit, std::isfinite(value) && value <= limit});
  };
  for (const auto& pt : resolve_sweep(s)) {
    std::ostringstream tag;
    tag << "lambda=" << format_double(pt.lambda);
    const auto gs = solve_ground_state(coupling_template(s).at(pt.lambda));
    const auto& d = gs.contractions;
    add(tag.str() + " bogoliubov_normalization", bogoliubov_residual(gs.transform), 1e-10);
    add(tag.str() + " pure_state_identity", pure_state_residual(d), 1e-9);
    add(tag.str() + " global_spectrum_zero", symplectic_eigenvalues(d, tol).max(), 1e-9);
    for (const auto& p : s.partitions) {
      const std::string pre = tag.str() + " " + p.id + " ";
      if (p.is_pair()) {
        const auto spec = partial_transpose_spectrum(d, p.pair().b.span(), p.pair().c.span(), tol);
        add(pre + "pt_floor", std::max(0.0, -0.5 - spec.min()), tol.physicality);
        continue;
      }
      const auto& a = p.region();
      const Region rest = Region(complement_indices(a.span(), s.n_modes()), s.n_modes());
      const auto sa = reduced_spectrum(d, a.span(), tol);
      const auto sb = reduced_spectrum(d, rest.span(), tol);
      add(pre + "entropy_symmetry",
          std::abs(entanglement_entropy(sa, s.log_base).value - entanglement_entropy(sb, s.log_base).value), 1e-8);
      if (rest.empty()) continue;
      const auto pt_spec = partial_transpose_spectrum(d, a.span(), rest.span(), tol);
      add(pre + "pt_floor", std::max(0.0, -0.5 - pt_spec.min()), tol.physicality);
      // 2 asinh(sqrt f) is not Lipschitz at f = 0: eigensolver noise eps * f(1 + f) on a mode
      // that should vanish shows up as its square root. The limit carries that term.
      const auto sp = pure_state_reduced_spectrum(d, a.span(), tol);
      const double top = sp.max() * (1.0 + sp.max());
      const double floor = 2.0 * log_e(s.log_base) * static_cast<double>(sp.size()) *
                           std::sqrt(std::numeric_limits<double>::epsilon() * top);
      add(pre + "negativity_identity",
          std::abs(log_negativity(pt_spec, s.log_base).value - pure_bipartition_log_negativity(sp, s.log_base).value),
          1e-9 + floor);
    }
  }
  return rep;
}

}  // namespace gaussent

#endif  // GAUSSENT_HARNESS_HPP
