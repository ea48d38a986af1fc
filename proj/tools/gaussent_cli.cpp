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


// Command-line driver: `run` evaluates a scenario sweep and writes results.csv,
// results.json and manifest.json; `verify` runs the invariant suite.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gaussent/harness.hpp"

#ifndef GAUSSENT_PRESET_DIR
#define GAUSSENT_PRESET_DIR "presets"
#endif

namespace {

namespace fs = std::filesystem;
using gaussent::json;

fs::path preset_path(const std::string& name) {
  const char* env = std::getenv("GAUSSENT_PRESET_DIR");
  const fs::path dir = env ? fs::path(env) : fs::path(GAUSSENT_PRESET_DIR);
  fs::path p = dir / (name + ".json");
  if (!fs::exists(p)) throw gaussent::ConfigError("unknown preset \"" + name + "\" (looked in " + dir.string() + ")");
  return p;
}

struct Overrides {
  std::optional<int> threads;
  std::optional<std::string> log_base;
  std::optional<double> memory_cap_gib;
};

gaussent::Scenario load(const std::string& config, const std::string& preset, const Overrides& o) {
  const std::string path = preset.empty() ? config : preset_path(preset).string();
  if (path.empty()) throw gaussent::ConfigError("a config file or --preset is required");
  const std::string text = gaussent::read_text_file(path);
  json j = gaussent::parse_json_text(text);
  if (o.threads) j["threads"] = *o.threads;
  if (o.log_base) j["log_base"] = *o.log_base;
  if (o.memory_cap_gib) j["memory_cap_gib"] = *o.memory_cap_gib;
  try {
    return gaussent::scenario_from_json(j, text);
  } catch (const gaussent::ConfigError& e) {
    throw gaussent::ConfigError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of gaussian bosonic lattice states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gaussent::kVersion));

  std::string config, preset, out_dir;
  Overrides ov;
  int threads = 0;
  double cap = 0.0;
  std::string log_base;

  auto* run_cmd = app.add_subcommand("run", "Evaluate a scenario and write results");
  run_cmd->add_option("config", config, "Scenario JSON file");
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--threads", threads, "Worker threads over the lambda sweep")->check(CLI::PositiveNumber);
  run_cmd->add_option("--log-base", log_base, "Logarithm base")->check(CLI::IsMember({"2", "e"}));
  run_cmd->add_option("--preset", preset, "Load presets/NAME.json instead of a file");
  run_cmd->add_option("--memory-cap-gib", cap, "Memory cap in GiB")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a scenario");
  verify_cmd->add_option("config", config, "Scenario JSON file");
  verify_cmd->add_option("--preset", preset, "Load presets/NAME.json instead of a file");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) ov.threads = threads;
  if (!log_base.empty()) ov.log_base = log_base;
  if (cap > 0.0) ov.memory_cap_gib = cap;

  try {
    const auto scenario = load(config, preset, ov);
    if (*run_cmd) {
      const auto result = gaussent::run(scenario);
      fs::path dir = out_dir.empty() ? fs::path(scenario.output.empty() ? "results/" + scenario.id : scenario.output)
                                     : fs::path(out_dir);
      gaussent::write_outputs(dir, scenario, result);
      std::cout << "wrote " << result.rows.size() << " rows to " << (dir / "results.csv").string() << " in "
                << result.total_seconds << " s\n";
      return 0;
    }
    const auto report = gaussent::verify(scenario);
    gaussent::print_report(std::cout, report);
    return report.ok() ? 0 : 2;
  } catch (const gaussent::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
