// Copyright 2026 The seqlab Authors.
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

#ifndef SEQLAB_SRC_RUNNER_H_
#define SEQLAB_SRC_RUNNER_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace seqlab::internal {

using OrderedJson = nlohmann::ordered_json;

inline constexpr int kStatusOk = 0;
inline constexpr int kStatusCheckFailed = 10;

struct TableRow {
  std::string subcommand;
  std::string config_hash;
  std::vector<std::pair<std::string, OrderedJson>> cells;
};

// Rows sorted by (subcommand, config hash); columns in first-seen order.
std::string EmitTable(std::vector<TableRow> rows, const std::string& format);
std::string ShortestDouble(double v);
std::uint64_t Fnv1a(const std::string& bytes);

struct RunResult {
  int status = kStatusOk;
  std::string output;
};

// params is a JSON object; see the CLI for the keys each subcommand takes.
RunResult Run(const std::string& subcommand, const std::string& params_json);

}  // namespace seqlab::internal

#endif  // SEQLAB_SRC_RUNNER_H_
