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

#ifndef SEQLAB_CORE_H_
#define SEQLAB_CORE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlab/error.h"

namespace seqlab {

using Outcome = int;
using Path = std::vector<Outcome>;

inline constexpr int kMaxHorizon = 20;

// Indexing of all prefixes of length 0..n over an alphabet of size k.
// A prefix of length t with base-k code c (y_1 most significant) has
// prefix_index offset(t) + c. Nodes of the conditional tree are the
// prefixes of length < n, so node index and prefix index coincide there.
class PathSpace {
 public:
  PathSpace(int horizon, int alphabet);

  int horizon() const { return horizon_; }
  int alphabet() const { return alphabet_; }
  std::size_t num_paths() const { return offsets_[horizon_ + 1] - offsets_[horizon_]; }
  std::size_t num_nodes() const { return offsets_[horizon_]; }
  std::size_t level_offset(int t) const { return offsets_[t]; }
  std::size_t level_size(int t) const { return offsets_[t + 1] - offsets_[t]; }

  std::size_t prefix_index(std::span<const Outcome> prefix) const;
  Path decode_prefix(std::size_t index) const;
  // Code of a full-length path in [0, num_paths).
  std::size_t encode_path(std::span<const Outcome> path) const;
  Path decode_path(std::size_t code) const;

 private:
  int horizon_;
  int alphabet_;
  std::vector<std::size_t> offsets_;  // size horizon + 2
};

std::string PathToString(std::span<const Outcome> path);
Path PathFromString(const std::string& text, int alphabet = 2);

// Full conditional-probability tree over Y^n, stored densely in linear space.
class JointDistribution {
 public:
  // `conditionals` holds num_nodes * alphabet entries, node-major.
  JointDistribution(int horizon, int alphabet, std::vector<double> conditionals);

  static JointDistribution Uniform(int horizon, int alphabet);
  static JointDistribution Iid(int horizon, std::vector<double> probs);
  // Builds each conditional from `fn(prefix)`.
  static JointDistribution FromFunction(
      int horizon, int alphabet,
      const std::function<std::vector<double>(std::span<const Outcome>)>& fn);

  int horizon() const { return space_.horizon(); }
  int alphabet() const { return space_.alphabet(); }
  const PathSpace& space() const { return space_; }

  double conditional(std::span<const Outcome> prefix, Outcome y) const;
  std::span<const double> node(std::size_t node_index) const {
    return {cond_.data() + node_index * alphabet(), static_cast<std::size_t>(alphabet())};
  }
  std::span<const double> raw() const { return cond_; }

  double joint_prob(std::span<const Outcome> path) const;
  // joint_prob of every full path, in path-code order.
  std::vector<double> all_joint_probs() const;

  double min_conditional() const;
  // Membership in the set of joints with all conditionals >= 1/(n^2 |Y|).
  bool in_delta_n() const;

  bool operator==(const JointDistribution& other) const {
    return horizon() == other.horizon() && alphabet() == other.alphabet() &&
           cond_ == other.cond_;
  }

 private:
  PathSpace space_;
  std::vector<double> cond_;
};

double DeltaNFloor(int horizon, int alphabet);

// Complete binary tree of contexts, heap order: node (t, y_{1:t-1}) lives at
// PathSpace(n, 2).prefix_index(y_{1:t-1}).
class ContextTree {
 public:
  ContextTree(int depth, std::vector<int> nodes);
  static ContextTree Constant(int depth, int context);

  int depth() const { return depth_; }
  const std::vector<int>& nodes() const { return nodes_; }
  int at(std::span<const Outcome> prefix) const;
  // Context sequence x_1(y), ..., x_n(y) along a full path.
  std::vector<int> along(std::span<const Outcome> path) const;

 private:
  int depth_;
  PathSpace space_;
  std::vector<int> nodes_;
};

enum class ClassKind { kFiniteJoint, kFiniteFunction, kGrid };
const char* ClassKindName(ClassKind kind);

struct GridInfo {
  std::string family;
  std::vector<double> parameters;  // grid points (one scalar per member) if scalar
  double step = 0.0;
  bool closed_form_sup = false;
  std::string surrogate_note;
};

// Per-path supremum over a grid family where a closed form exists.
using SupFunction = std::function<double(std::span<const Outcome>)>;

class ExpertClass {
 public:
  static ExpertClass FiniteJoint(std::vector<JointDistribution> members);
  // values[m][x] = f_m(x), the probability of outcome 1 in context x.
  static ExpertClass FiniteFunction(int num_contexts, std::vector<std::vector<double>> values,
                                    std::optional<GridInfo> grid = std::nullopt);
  static ExpertClass Grid(GridInfo info, std::vector<JointDistribution> members,
                          SupFunction closed_form = nullptr);

  ClassKind kind() const { return kind_; }
  std::size_t size() const;
  bool is_joint() const { return kind_ != ClassKind::kFiniteFunction; }
  int horizon() const;   // joint kinds only
  int alphabet() const;  // 2 for function classes

  const std::vector<JointDistribution>& joints() const;
  int num_contexts() const;                           // function kind only
  const std::vector<std::vector<double>>& functions() const;  // function kind only
  const std::optional<GridInfo>& grid() const { return grid_; }

  bool has_closed_form_sup() const { return static_cast<bool>(closed_form_); }
  double closed_form_sup(std::span<const Outcome> path) const { return closed_form_(path); }

 private:
  ExpertClass() = default;
  ClassKind kind_ = ClassKind::kFiniteJoint;
  std::vector<JointDistribution> joints_;
  int num_contexts_ = 0;
  std::vector<std::vector<double>> functions_;
  std::optional<GridInfo> grid_;
  SupFunction closed_form_;
};

struct Round {
  int context;
  double p_hat;  // probability assigned to outcome 1
  Outcome y;
  double loss;
};

class GameTranscript {
 public:
  void Append(int context, double p_hat, Outcome y);
  const std::vector<Round>& rounds() const { return rounds_; }
  double cumulative_loss() const;

 private:
  std::vector<Round> rounds_;
};

// Operations.
double Conditional(const JointDistribution& q, std::span<const Outcome> prefix, Outcome y);
double JointProb(const JointDistribution& q, std::span<const Outcome> path);
// +inf when the realized outcome has probability zero.
double LogLoss(double p_hat, Outcome y);
// F∘x as a finite-joint class; identical joints are merged.
ExpertClass ComposeClassWithTree(const ExpertClass& f, const ContextTree& x);
// Joint of a single function expert along a tree.
JointDistribution ComposeFunction(std::span<const double> f, const ContextTree& x);
double EmpiricalRegret(const GameTranscript& transcript, const ExpertClass& f,
                       std::span<const int> x_path, std::span<const Outcome> y_path);

}  // namespace seqlab

#endif  // SEQLAB_CORE_H_
