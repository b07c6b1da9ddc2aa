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

#ifndef SEQLAB_SRC_CLASS_JSON_H_
#define SEQLAB_SRC_CLASS_JSON_H_

#include <optional>

#include <json.hpp>

#include "seqlab/core.h"

namespace seqlab::internal {

using Json = nlohmann::json;

ExpertClass ClassFromJson(const Json& spec);
std::optional<ContextTree> TreeFromJson(const Json& spec, int n);
Json ClassToJson(const ExpertClass& q);
Json TreeJson(const ContextTree& x);
Json JointToJson(const JointDistribution& q);
JointDistribution JointFromJson(const Json& j, int n, int alphabet);

}  // namespace seqlab::internal

#endif  // SEQLAB_SRC_CLASS_JSON_H_
