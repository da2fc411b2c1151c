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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremal/entanglement.hpp"
#include "extremal/error.hpp"
#include "extremal/hamiltonian.hpp"
#include "extremal/pauli.hpp"
#include "extremal/types.hpp"

namespace extremal {

enum class Command { analyze, sweep, region, classify, verify };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInadmissible = 3;
inline constexpr int kExitSolver = 4;
inline constexpr int kExitVerification = 5;

int exit_code_for(ErrorCode code);

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

struct OutputSpec {
  std::string path;    // empty: standard output
  std::string format;  // "csv" or "json"
};

struct RunConfig {
  Command command = Command::verify;
  std::optional<HamiltonianParams> params;
  std::optional<Mat4c> matrix;
  std::optional<std::array<double, 3>> mixing;
  std::optional<SweepSpec> sweep;
  std::optional<std::array<double, 4>> weights;
  std::optional<FanoOperator> state;
  OutputSpec output;
  std::uint64_t seed = 0;
  int region_resolution = 50;
  std::string inject_fault;  // "" or "ppt_constant"

  bool has_hamiltonian() const { return params.has_value() || matrix.has_value(); }
  Mat4c hamiltonian() const;
};

/// Throws ErrorCode::invalid_argument (or non_hermitian for a matrix literal) on any schema violation.
RunConfig parse_config(const nlohmann::json& j, std::optional<Command> command = std::nullopt);
RunConfig load_config(const std::string& path, std::optional<Command> command = std::nullopt);

nlohmann::json state_to_json(const DensityState& s);
DensityState state_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const EntanglementVerdict& v);

nlohmann::json cmd_analyze(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);
std::string cmd_region(const RunConfig& config);
nlohmann::json cmd_classify(const RunConfig& config);

struct VerifyReport {
  nlohmann::json summary;
  bool pass = false;
};
VerifyReport cmd_verify(const RunConfig& config);

/// Runs the configured command, writes the output file (or out), returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace extremal
