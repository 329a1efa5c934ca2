// Copyright 2026 The ioncavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "ioncavity/error.hpp"
#include "runner.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kNumerical = 3 };

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> out_dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ioncavity::ConfigError("config: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(ioncavity::cli::Experiment e, const Overrides& o) {
  using namespace ioncavity;
  try {
    const std::string text = read_file(o.config);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& err) {
      throw ConfigError("config: " + o.config + ": " + err.what());
    }
    if (o.seed) doc["seed"] = *o.seed;
    if (o.threads) doc["threads"] = *o.threads;
    if (o.out_dir) doc["output"]["dir"] = *o.out_dir;
    const auto cfg = cli::parse_config(doc, e);
    const auto summary = cli::run_experiment(cfg, text);
    std::cout << cli::to_string(e) << ": wrote";
    for (const auto& f : summary.outputs) std::cout << ' ' << f;
    std::cout << " to " << cfg.out_dir << " in " << summary.wall_seconds << " s\n";
    return kOk;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return kConfig;
  } catch (const NumericalError& err) {
    std::cerr << "numerical error: " << err.what() << '\n';
    return kNumerical;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superradiant ion-cavity photon source simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", IONCAVITY_VERSION);

  Overrides o;
  std::optional<ioncavity::cli::Experiment> chosen;
  for (auto e : ioncavity::cli::all_experiments()) {
    auto* sub = app.add_subcommand(ioncavity::cli::to_string(e));
    sub->add_option("-c,--config", o.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "override the master seed");
    sub->add_option("--threads", o.threads, "override the worker thread count");
    sub->add_option("-o,--out-dir", o.out_dir, "override the output directory");
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kConfig;
  }
  return chosen ? run(*chosen, o) : kConfig;
}
