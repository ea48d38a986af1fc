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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaussent/harness.hpp"

#ifndef GAUSSENT_SOURCE_DIR
#define GAUSSENT_SOURCE_DIR "."
#endif

namespace gaussent {
namespace {

namespace fs = std::filesystem;

std::string source(const std::string& rel) { return std::string(GAUSSENT_SOURCE_DIR) + "/" + rel; }

Scenario load(const std::string& rel) { return parse_scenario(read_text_file(source(rel))); }

std::string csv_of(const RunResult& r) {
  std::ostringstream os;
  write_csv(os, r.rows);
  return os.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* kSmall = R"({
  "id": "small",
  "lattice": {"kind": "square", "nx": 6, "ny": 6},
  "couplings": {"delta_plus": 1.5, "delta_minus": 1.0},
  "sweep": {"ratios": [2, 4, 8]},
  "methods": ["exact", "weak", "closed_form"],
  "partitions": [
    {"id": "site", "kind": "site", "x": 2, "y": 2},
    {"id": "block", "kind": "rect", "x0": 1, "y0": 1, "width": 3, "height": 3},
    {"id": "pair", "kind": "block_pair", "geometry": "parallel", "n": 4, "depth": 2, "separation": 0}
  ]
})";

TEST(Scenario, ParsesPresets) {
  for (const char* name : {"fig2", "fig4", "fig5", "fig6", "lmg", "vacuum", "verify8x8"}) {
    EXPECT_NO_THROW(load(std::string("presets/") + name + ".json")) << name;
  }
  const auto s = load("presets/fig2.json");
  EXPECT_EQ(s.lattice.size(), 900);
  EXPECT_EQ(s.partitions.size(), 4u);
  EXPECT_DOUBLE_EQ(resolve_lambda_c(s), 5.0);
  EXPECT_EQ(s.methods.size(), 3u);
  const auto f4 = load("presets/fig4.json");
  EXPECT_TRUE(f4.partitions[0].is_pair());
  EXPECT_EQ(f4.partitions[0].pair_shape->depth, 10);
}

TEST(Scenario, SweepResolution) {
  auto s = parse_scenario(kSmall);
  const auto pts = resolve_sweep(s);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_DOUBLE_EQ(pts[1].lambda, 20.0);
  EXPECT_DOUBLE_EQ(pts[1].ratio, 4.0);
  const auto lmg = load("presets/lmg.json");
  EXPECT_DOUBLE_EQ(resolve_lambda_c(lmg), 1.0);
  const auto vac = load("presets/vacuum.json");
  EXPECT_TRUE(std::isnan(resolve_sweep(vac)[0].ratio));
}

TEST(Scenario, ExactLambdaC) {
  const auto s = load("tests/data/custom_chain.json");
  // Open chain with link strength 0.5: 2 cos(pi / 5) * 0.5.
  EXPECT_NEAR(resolve_lambda_c(s), std::cos(std::numbers::pi / 5.0), 1e-12);
  EXPECT_EQ(s.log_base, LogBase::E);
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  try {
    load("tests/data/malformed.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  const std::string bad_ratio = R"({
  "lattice": {"kind": "square", "nx": 4, "ny": 4},
  "couplings": {"delta_plus": 1.5, "delta_minus": 1.0},
  "partitions": [],
  "sweep": {"ratios": [0.5]}
})";
  try {
    parse_scenario(bad_ratio);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
  const std::string bad_region = R"({
  "lattice": {"kind": "square", "nx": 4, "ny": 4},
  "couplings": {"delta_plus": 1.5, "delta_minus": 1.0},
  "sweep": {"ratios": [2]},
  "partitions": [
    {"id": "far", "kind": "site", "x": 9, "y": 0}
  ]
})";
  try {
    parse_scenario(bad_region);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
}

TEST(Scenario, RejectsBadInput) {
  EXPECT_THROW(load("tests/data/bad_symmetry.json"), SymmetryViolation);
  EXPECT_THROW(parse_scenario(R"({"lattice": {"kind": "hex"}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"lattice": {"kind": "square", "nx": 4, "ny": 4}, "couplings": {},
                                  "sweep": {"ratios": [2]}, "methods": [], "partitions": []})"),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"lattice": {"kind": "square", "nx": 4, "ny": 4}, "couplings": {},
                                  "sweep": {"ratios": [2]}, "partitions": [], "log_base": "10"})"),
               ConfigError);
}

TEST(Harness, RowsAndScaledColumns) {
  const auto s = parse_scenario(kSmall);
  const auto res = run(s);
  ASSERT_EQ(res.rows.size(), 3u * 3u * 3u);
  // Grid order: sweep point, then partition, then method.
  EXPECT_EQ(res.rows[0].partition, "site");
  EXPECT_EQ(res.rows[0].method, Method::Exact);
  EXPECT_EQ(res.rows[1].method, Method::Weak);
  EXPECT_EQ(res.rows[3].partition, "block");
  EXPECT_DOUBLE_EQ(res.rows[9].ratio, 4.0);

  std::istringstream csv(csv_of(res));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, kCsvHeader);
  const auto header = split(line);
  int checked = 0;
  while (std::getline(csv, line)) {
    const auto cells = split(line);
    ASSERT_EQ(cells.size(), header.size()) << line;
    if (cells[6].empty() || cells[9].empty()) continue;
    const double ent = std::stod(cells[6]), m2 = std::stod(cells[9]);
    EXPECT_DOUBLE_EQ(std::stod(cells[10]), ent / m2);
    const double neg = std::stod(cells[7]), m1 = std::stod(cells[8]);
    EXPECT_DOUBLE_EQ(std::stod(cells[12]), neg / m1);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Harness, ExactRowsMatchDirectEvaluation) {
  const auto s = parse_scenario(kSmall);
  const auto res = run(s);
  const auto d = solve_ground_state(coupling_template(s).at(40.0)).contractions;
  const auto& block = s.partitions[1].region();
  const double ent = entanglement_entropy(pure_state_reduced_spectrum(d, block.span())).value;
  const double neg = log_negativity(partial_transpose_spectrum(d, s.partitions[2].pair().b.span(),
                                                               s.partitions[2].pair().c.span())).value;
  bool seen_block = false, seen_pair = false;
  for (const auto& r : res.rows) {
    if (r.lambda != 40.0 || r.method != Method::Exact) continue;
    if (r.partition == "block") {
      EXPECT_EQ(*r.entropy, ent);
      EXPECT_DOUBLE_EQ(*r.measure_2, 12.0);
      seen_block = true;
    }
    if (r.partition == "pair") {
      EXPECT_EQ(*r.negativity, neg);
      EXPECT_FALSE(r.entropy.has_value());
      EXPECT_DOUBLE_EQ(*r.measure_1, 4.0);
      seen_pair = true;
    }
  }
  EXPECT_TRUE(seen_block && seen_pair);
}

TEST(Harness, DeterministicAcrossThreadCounts) {
  auto s = parse_scenario(kSmall);
  const std::string one = csv_of(run(s));
  s.threads = 3;
  const std::string three = csv_of(run(s));
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, csv_of(run(s)));
}

TEST(Harness, FormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-17, 123456789.125, -0.0625}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::nan("")), "");
}

TEST(Harness, MemoryCapAndUnstable) {
  auto s = load("presets/fig2.json");
  s.memory_cap_gib = 0.01;
  EXPECT_THROW(run(s), MemoryCap);
  auto t = parse_scenario(kSmall);
  t.sweep_ratios = false;
  t.sweep = {1.0};
  EXPECT_THROW(run(t), Unstable);
}

TEST(Harness, ClosedFormFlagsVanishingPairs) {
  const std::string text = R"({
  "lattice": {"kind": "square", "nx": 14, "ny": 14},
  "couplings": {"delta_plus": 0.8, "delta_minus": 1.0},
  "sweep": {"ratios": [16]},
  "methods": ["closed_form"],
  "partitions": [
    {"id": "lines", "kind": "line_pair", "n": 10, "separation": 1},
    {"id": "far", "kind": "block_pair", "n": 4, "separation": 2}
  ]
})";
  const auto res = run(parse_scenario(text));
  ASSERT_EQ(res.rows.size(), 2u);
  for (const auto& r : res.rows) {
    EXPECT_EQ(*r.negativity, 0.0);
    EXPECT_EQ(r.flags, "vanishes");
  }
}

TEST(Harness, FullyConnectedColumnsAgree) {
  const auto res = run(load("presets/lmg.json"));
  for (std::size_t i = 0; i + 2 < res.rows.size(); i += 3) {
    const auto& ex = res.rows[i];
    const auto& cf = res.rows[i + 2];
    ASSERT_EQ(ex.method, Method::Exact);
    ASSERT_EQ(cf.method, Method::ClosedForm);
    if (ex.entropy) {
      EXPECT_NEAR(*cf.entropy, *ex.entropy, 1e-8 * std::max(1.0, *ex.entropy)) << ex.partition << " " << ex.lambda;
    }
    EXPECT_NEAR(*cf.negativity, *ex.negativity, 1e-8 * std::max(1.0, *ex.negativity)) << ex.partition << " " << ex.lambda;
  }
}

TEST(Harness, CustomModelRuns) {
  const auto res = run(load("tests/data/custom_chain.json"));
  // Closed forms do not cover custom couplings.
  EXPECT_EQ(res.rows.size(), 2u * 2u * 2u);
  for (const auto& r : res.rows) EXPECT_FALSE(r.sigma.has_value());
}

TEST(Harness, OutputsAndManifest) {
  const auto s = parse_scenario(kSmall);
  const auto res = run(s);
  const fs::path dir = fs::temp_directory_path() / "gaussent_harness_test";
  fs::remove_all(dir);
  write_outputs(dir, s, res);
  for (const char* f : {"results.csv", "results.json", "manifest.json"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
  std::ifstream mf(dir / "manifest.json");
  const json m = json::parse(mf);
  EXPECT_EQ(m.at("config_hash"), config_hash(s));
  EXPECT_EQ(m.at("versions").at("gaussent"), kVersion);
  EXPECT_EQ(m.at("timings").at("points").size(), 3u);
  std::ifstream rf(dir / "results.json");
  const json r = json::parse(rf);
  EXPECT_EQ(r.at("rows").size(), res.rows.size());
  EXPECT_TRUE(r.at("rows")[0].contains("wall_seconds"));
  fs::remove_all(dir);
}

TEST(Verify, VacuumAndLattice) {
  const auto vac = verify(load("presets/vacuum.json"));
  EXPECT_TRUE(vac.ok());
  for (const auto& c : vac.checks) EXPECT_LT(c.value, 1e-12) << c.name;
  const auto rep = verify(load("presets/verify8x8.json"));
  EXPECT_TRUE(rep.ok());
  for (const auto& c : rep.checks) EXPECT_LE(c.value, c.threshold) << c.name;
  std::ostringstream os;
  print_report(os, rep);
  EXPECT_NE(os.str().find("all invariants hold"), std::string::npos);
}

}  // namespace
}  // namespace gaussent
