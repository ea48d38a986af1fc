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

#ifndef GAUSSENT_SCENARIO_HPP
#define GAUSSENT_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "quadratic_model.hpp"
#include "region_json.hpp"

namespace gaussent {

enum class LatticeKind { Square, FullyConnected, Custom };
enum class Method { Exact, Weak, ClosedForm };
enum class LambdaCMode { Estimate, Exact, Value };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Weak: return "weak";
    case Method::ClosedForm: return "closed_form";
  }
  return "?";
}

struct Scenario {
  std::string id = "scenario";
  LatticeKind kind = LatticeKind::Square;
  Lattice2D lattice;  // fully connected and custom models use an n x 1 index lattice

  LatticeCouplings couplings;  // square
  double delta_x = 0.0;        // fully connected
  double delta_y = 0.0;
  RealMatrix custom_plus;  // custom
  RealMatrix custom_minus;

  LambdaCMode lambda_c_mode = LambdaCMode::Estimate;
  double lambda_c_value = 0.0;
  bool sweep_ratios = true;
  std::vector<double> sweep;  // ratios lambda / lambda_c, or absolute lambdas

  std::vector<Partition> partitions;
  std::vector<Method> methods{Method::Exact};

  double memory_cap_gib = 4.0;
  LogBase log_base = LogBase::Two;
  int threads = 1;
  std::string output;

  json source;  // effective configuration document

  int n_modes() const { return lattice.size(); }
};

inline CouplingTemplate<double> coupling_template(const Scenario& s) {
  switch (s.kind) {
    case LatticeKind::Square: return lattice_couplings(s.lattice, s.couplings);
    case LatticeKind::FullyConnected: return fully_connected_couplings(s.n_modes(), s.delta_x, s.delta_y);
    case LatticeKind::Custom: return {s.custom_plus, s.custom_minus};
  }
  return {};
}

/// Adjacency used for the boundary measures: nearest neighbours on the square lattice,
/// all pairs for the fully connected model, the coupling pattern otherwise.
inline AdjacencyMatrix measure_adjacency(const Scenario& s) {
  switch (s.kind) {
    case LatticeKind::Square: return build_adjacency(s.lattice, AdjacencyKind::FirstNeighbor);
    case LatticeKind::FullyConnected: return build_adjacency(s.lattice, AdjacencyKind::FullyConnected);
    case LatticeKind::Custom: {
      RealMatrix m = (s.custom_plus.cwiseAbs() + s.custom_minus.cwiseAbs()).unaryExpr([](double v) {
        return v > 0.0 ? 1.0 : 0.0;
      });
      m.diagonal().setZero();
      return {m};
    }
  }
  return {};
}

/// lambda_c according to the scenario's policy.
inline double resolve_lambda_c(const Scenario& s) {
  switch (s.lambda_c_mode) {
    case LambdaCMode::Value: return s.lambda_c_value;
    case LambdaCMode::Estimate:
      return s.kind == LatticeKind::Square ? s.couplings.lambda_c_estimate() : lambda_c_estimate(coupling_template(s));
    case LambdaCMode::Exact: return critical_lambda(coupling_template(s)).exact;
  }
  return 0.0;
}

struct SweepPoint {
  double lambda = 0.0;
  double ratio = std::nan("");  // lambda / lambda_c when lambda_c > 0
};

inline std::vector<SweepPoint> resolve_sweep(const Scenario& s) {
  const double lc = resolve_lambda_c(s);
  std::vector<SweepPoint> out;
  for (double v : s.sweep) {
    SweepPoint p;
    if (s.sweep_ratios) {
      if (!(lc > 0.0)) throw ConfigError("sweep is given as lambda/lambda_c but lambda_c is zero");
      p.lambda = v * lc;
      p.ratio = v;
    } else {
      p.lambda = v;
      if (lc > 0.0) p.ratio = v / lc;
    }
    out.push_back(p);
  }
  return out;
}

namespace detail {

/// 1-based line of the first occurrence of `needle` in `text`, 0 if absent.
inline int line_of(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

inline int line_at_byte(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

template <typename F>
void with_context(const std::string& text, const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    const int line = line_of(text, "\"" + key + "\"");
    throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + e.what());
  } catch (const json::exception& e) {
    const int line = line_of(text, "\"" + key + "\"");
    throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + e.what());
  }
}

inline RealMatrix matrix_from_json(const json& j, int n, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ConfigError(std::string(name) + " must be an array of " + std::to_string(n) + " rows");
  }
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ConfigError(std::string(name) + " row " + std::to_string(i) + " must hold " + std::to_string(n) + " numbers");
    }
    for (int k = 0; k < n; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

inline std::vector<double> number_list(const json& j, const char* name) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(name) + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

}  // namespace detail

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(detail::line_at_byte(text, e.byte == 0 ? 0 : e.byte - 1)) +
                      ": malformed JSON (" + e.what() + ")");
  }
}

/// Build a scenario from a parsed document; `text` is the source used to locate errors.
inline Scenario scenario_from_json(const json& j, const std::string& text = {}) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  Scenario s;
  s.source = j;
  s.id = j.value("id", s.id);

  detail::with_context(text, "lattice", [&] {
    if (!j.contains("lattice")) throw ConfigError("missing section");
    const json& l = j.at("lattice");
    const std::string kind = l.value("kind", "square");
    if (kind == "square") {
      s.kind = LatticeKind::Square;
      const std::string b = l.value("boundary", "open");
      if (b != "open" && b != "cyclic") throw ConfigError("boundary must be \"open\" or \"cyclic\"");
      s.lattice = Lattice2D(l.at("nx").get<int>(), l.at("ny").get<int>(),
                            b == "open" ? Boundary::Open : Boundary::Cyclic);
    } else if (kind == "fully_connected") {
      s.kind = LatticeKind::FullyConnected;
      const int n = l.at("n").get<int>();
      if (n < 2) throw ConfigError("fully connected model needs n >= 2");
      s.lattice = Lattice2D(n, 1);
    } else if (kind == "custom") {
      s.kind = LatticeKind::Custom;
      const int n = l.at("n").get<int>();
      if (n < 1) throw ConfigError("custom model needs n >= 1");
      s.lattice = Lattice2D(n, 1);
    } else {
      throw ConfigError("unknown lattice kind \"" + kind + "\"");
    }
  });

  detail::with_context(text, "couplings", [&] {
    if (!j.contains("couplings")) throw ConfigError("missing section");
    const json& c = j.at("couplings");
    if (s.kind == LatticeKind::Square) {
      if (c.contains("delta_plus") || c.contains("delta_minus")) {
        s.couplings = LatticeCouplings::isotropic(c.value("delta_plus", 0.0), c.value("delta_minus", 0.0));
      } else {
        s.couplings = {c.value("delta_plus_x", 0.0), c.value("delta_plus_y", 0.0), c.value("delta_minus_x", 0.0),
                       c.value("delta_minus_y", 0.0)};
      }
    } else if (s.kind == LatticeKind::FullyConnected) {
      s.delta_x = c.at("delta_x").get<double>();
      s.delta_y = c.at("delta_y").get<double>();
    } else {
      const int n = s.n_modes();
      s.custom_plus = detail::matrix_from_json(c.at("delta_plus"), n, "delta_plus");
      s.custom_minus = detail::matrix_from_json(c.at("delta_minus"), n, "delta_minus");
      // Symmetry is enforced here so bad input fails before any solve.
      (void)QuadraticHamiltonian<double>(Eigen::VectorXd::Ones(n), s.custom_plus, s.custom_minus);
    }
  });

  detail::with_context(text, "lambda_c", [&] {
    if (!j.contains("lambda_c")) return;
    const json& v = j.at("lambda_c");
    if (v.is_number()) {
      s.lambda_c_mode = LambdaCMode::Value;
      s.lambda_c_value = v.get<double>();
      if (!(s.lambda_c_value > 0.0)) throw ConfigError("must be positive");
    } else if (v == "estimate") {
      s.lambda_c_mode = LambdaCMode::Estimate;
    } else if (v == "exact") {
      s.lambda_c_mode = LambdaCMode::Exact;
    } else {
      throw ConfigError("expected \"estimate\", \"exact\" or a number");
    }
  });

  detail::with_context(text, "sweep", [&] {
    if (!j.contains("sweep")) throw ConfigError("missing section");
    const json& w = j.at("sweep");
    if (w.contains("ratios")) {
      s.sweep_ratios = true;
      s.sweep = detail::number_list(w.at("ratios"), "ratios");
      for (double r : s.sweep) {
        if (!(r > 1.0)) throw ConfigError("lambda/lambda_c must be > 1 (gapped side only)");
      }
    } else if (w.contains("lambdas")) {
      s.sweep_ratios = false;
      s.sweep = detail::number_list(w.at("lambdas"), "lambdas");
      for (double l : s.sweep) {
        if (!(l > 0.0)) throw ConfigError("lambda must be positive");
      }
    } else {
      throw ConfigError("expected \"ratios\" or \"lambdas\"");
    }
  });

  detail::with_context(text, "methods", [&] {
    if (!j.contains("methods")) return;
    s.methods.clear();
    for (const auto& m : j.at("methods")) {
      const std::string name = m.get<std::string>();
      if (name == "exact") s.methods.push_back(Method::Exact);
      else if (name == "weak") s.methods.push_back(Method::Weak);
      else if (name == "closed_form") s.methods.push_back(Method::ClosedForm);
      else throw ConfigError("unknown method \"" + name + "\"");
    }
    if (s.methods.empty()) throw ConfigError("at least one method is required");
  });

  detail::with_context(text, "partitions", [&] {
    if (!j.contains("partitions") || !j.at("partitions").is_array()) throw ConfigError("must be an array");
    int k = 0;
    for (const auto& pj : j.at("partitions")) {
      const std::string fallback = "p" + std::to_string(k++);
      try {
        s.partitions.push_back(partition_from_json(pj, s.lattice, fallback));
      } catch (const Error& e) {
        const std::string id = pj.value("id", fallback);
        const int line = detail::line_of(text, "\"" + id + "\"");
        throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "partition \"" + id +
                          "\": " + e.what());
      }
    }
  });

  detail::with_context(text, "memory_cap_gib", [&] {
    s.memory_cap_gib = j.value("memory_cap_gib", s.memory_cap_gib);
    if (!(s.memory_cap_gib > 0.0)) throw ConfigError("must be positive");
  });
  detail::with_context(text, "threads", [&] {
    s.threads = j.value("threads", s.threads);
    if (s.threads < 1) throw ConfigError("must be at least 1");
  });
  detail::with_context(text, "log_base", [&] {
    const std::string b = j.contains("log_base") ? j.at("log_base").dump() : "\"2\"";
    if (b == "\"2\"" || b == "2") s.log_base = LogBase::Two;
    else if (b == "\"e\"") s.log_base = LogBase::E;
    else throw ConfigError("expected \"2\" or \"e\"");
  });
  s.output = j.value("output", std::string());
  return s;
}

inline Scenario parse_scenario(const std::string& text) { return scenario_from_json(parse_json_text(text), text); }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gaussent

#endif  // GAUSSENT_SCENARIO_HPP
