// Copyright 2026 The extremal-qudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "extremal/cli_io.hpp"

int main(int argc, char** argv) {
  using namespace extremal;
  CLI::App app{"Extremal density matrices of 4 x 4 Hamiltonians and PPT classification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "stratum, commutant and extremal states of one Hamiltonian"},
      {"sweep", "extremal mean values along a parameter grid"},
      {"region", "admissible mixing-coefficient region on a grid"},
      {"classify", "PPT verdict for a mixture of Kramers extremal states"},
      {"verify", "run the built-in identity checks"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
    if (std::string(name) != "verify") opt->required();
    sub->add_option("--out", out_path, "output file (overrides output.path)");
    sub->add_option("--seed", seed, "multistart / sampling seed (overrides seed)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const Command command = command_from_string(app.get_subcommands().front()->get_name());
  RunConfig config;
  try {
    config = config_path.empty() ? parse_config(nlohmann::json::object(), command) : load_config(config_path, command);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  if (!out_path.empty()) config.output.path = out_path;
  if (seed) config.seed = *seed;
  return run(config, std::cout, std::cerr);
}
