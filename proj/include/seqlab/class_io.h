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

#ifndef SEQLAB_CLASS_IO_H_
#define SEQLAB_CLASS_IO_H_

#include <optional>
#include <string>

#include "seqlab/core.h"

namespace seqlab {

// Class-spec documents:
//   {"kind": "finite-joint", "n": 2, "alphabet": 2,
//    "members": [{"iid": [0.5, 0.5]}, {"conditionals": {"": [..], "0": [..], "1": [..]}}]}
//   {"kind": "finite-function", "contexts": 2, "functions": [[0.3, 0.7], ...],
//    "tree": {"constant": 0} | {"nodes": {"": 0, "0": 1, "1": 0}}}
//   {"kind": "grid", "family": "bernoulli-iid", "n": 4, "thetas": [...]}
// Grid families: bernoulli-iid, bernoulli-ml, renewal (pmfs or hazards),
// lipschitz (grid_res), hilbert-ball (dim, resolution, n, contexts, shrink).
ExpertClass ParseClassSpec(const std::string& text);
// Context tree of depth n attached to a function-class spec, if any.
std::optional<ContextTree> ParseClassTree(const std::string& text, int n);
std::string ClassSpecToJson(const ExpertClass& q, int indent = -1);
std::string TreeToJson(const ContextTree& x, int indent = -1);

}  // namespace seqlab

#endif  // SEQLAB_CLASS_IO_H_
