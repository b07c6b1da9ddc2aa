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

#include "seqlab/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace seqlab {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kDegenerateClass: return "degenerate-class";
    case ErrorCode::kConditioning: return "conditioning";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kUnbounded: return "unbounded";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PathSpace

PathSpace::PathSpace(int horizon, int alphabet) : horizon_(horizon), alphabet_(alphabet) {
  Require(horizon >= 0 && horizon <= kMaxHorizon, ErrorCode::kBudgetExceeded,
          "horizon must lie in [0, " + std::to_string(kMaxHorizon) + "]");
  Require(alphabet >= 1, ErrorCode::kDomain, "alphabet must be nonempty");
  offsets_.assign(horizon + 2, 0);
  std::size_t level = 1;
  for (int t = 0; t <= horizon; ++t) {
    offsets_[t + 1] = offsets_[t] + level;
    Require(level <= (std::size_t{1} << 26) / static_cast<std::size_t>(alphabet) ||
                t == horizon,
            ErrorCode::kBudgetExceeded, "path space too large");
    level *= static_cast<std::size_t>(alphabet);
  }
}

std::size_t PathSpace::prefix_index(std::span<const Outcome> prefix) const {
  Require(prefix.size() <= static_cast<std::size_t>(horizon_), ErrorCode::kDomain,
          "prefix longer than horizon");
  std::size_t code = 0;
  for (Outcome y : prefix) {
    Require(y >= 0 && y < alphabet_, ErrorCode::kDomain, "symbol out of range");
    code = code * alphabet_ + y;
  }
  return offsets_[prefix.size()] + code;
}

Path PathSpace::decode_prefix(std::size_t index) const {
  Require(index < offsets_[horizon_ + 1], ErrorCode::kDomain, "prefix index out of range");
  int t = 0;
  while (offsets_[t + 1] <= index) ++t;
  std::size_t code = index - offsets_[t];
  Path path(t);
  for (int i = t - 1; i >= 0; --i) {
    path[i] = static_cast<Outcome>(code % alphabet_);
    code /= alphabet_;
  }
  return path;
}

std::size_t PathSpace::encode_path(std::span<const Outcome> path) const {
  Require(path.size() == static_cast<std::size_t>(horizon_), ErrorCode::kDomain,
          "path length must equal the horizon");
  return prefix_index(path) - offsets_[horizon_];
}

Path PathSpace::decode_path(std::size_t code) const {
  return decode_prefix(offsets_[horizon_] + code);
}

std::string PathToString(std::span<const Outcome> path) {
  std::string s;
  s.reserve(path.size());
  for (Outcome y : path) {
    Require(y >= 0 && y < 10, ErrorCode::kUnsupported, "string paths need |Y| <= 10");
    s.push_back(static_cast<char>('0' + y));
  }
  return s;
}

Path PathFromString(const std::string& text, int alphabet) {
  Path path;
  for (char c : text) {
    int y = c - '0';
    Require(y >= 0 && y < alphabet, ErrorCode::kDomain, "bad symbol in path string");
    path.push_back(y);
  }
  return path;
}

// ---------------------------------------------------------------------------
// JointDistribution

namespace {
constexpr double kCondTolerance = 1e-12;
}

JointDistribution::JointDistribution(int horizon, int alphabet, std::vector<double> conditionals)
    : space_(horizon, alphabet), cond_(std::move(conditionals)) {
  Require(cond_.size() == space_.num_nodes() * alphabet, ErrorCode::kDomain,
          "conditional table has wrong size");
  for (std::size_t v = 0; v < space_.num_nodes(); ++v) {
    double sum = 0.0;
    for (int y = 0; y < alphabet; ++y) {
      double p = cond_[v * alphabet + y];
      Require(p >= 0.0 && p <= 1.0, ErrorCode::kDomain, "conditional outside [0,1]");
      sum += p;
    }
    Require(std::abs(sum - 1.0) <= kCondTolerance, ErrorCode::kDomain,
            "conditional vector does not sum to 1");
  }
}

JointDistribution JointDistribution::Uniform(int horizon, int alphabet) {
  PathSpace space(horizon, alphabet);
  return JointDistribution(horizon, alphabet,
                           std::vector<double>(space.num_nodes() * alphabet, 1.0 / alphabet));
}

JointDistribution JointDistribution::Iid(int horizon, std::vector<double> probs) {
  int k = static_cast<int>(probs.size());
  PathSpace space(horizon, k);
  std::vector<double> cond;
  cond.reserve(space.num_nodes() * k);
  for (std::size_t v = 0; v < space.num_nodes(); ++v) cond.insert(cond.end(), probs.begin(), probs.end());
  return JointDistribution(horizon, k, std::move(cond));
}

JointDistribution JointDistribution::FromFunction(
    int horizon, int alphabet,
    const std::function<std::vector<double>(std::span<const Outcome>)>& fn) {
  PathSpace space(horizon, alphabet);
  std::vector<double> cond;
  cond.reserve(space.num_nodes() * alphabet);
  for (std::size_t v = 0; v < space.num_nodes(); ++v) {
    Path prefix = space.decode_prefix(v);
    std::vector<double> probs = fn(prefix);
    Require(probs.size() == static_cast<std::size_t>(alphabet), ErrorCode::kDomain,
            "conditional vector has wrong length");
    cond.insert(cond.end(), probs.begin(), probs.end());
  }
  return JointDistribution(horizon, alphabet, std::move(cond));
}

double JointDistribution::conditional(std::span<const Outcome> prefix, Outcome y) const {
  Require(prefix.size() < static_cast<std::size_t>(horizon()), ErrorCode::kDomain,
          "prefix length must be < n");
  Require(y >= 0 && y < alphabet(), ErrorCode::kDomain, "symbol out of range");
  return cond_[space_.prefix_index(prefix) * alphabet() + y];
}

double JointDistribution::joint_prob(std::span<const Outcome> path) const {
  Require(path.size() == static_cast<std::size_t>(horizon()), ErrorCode::kDomain,
          "path length must equal n");
  double p = 1.0;
  std::size_t v = 0;
  std::size_t code = 0;
  for (int t = 0; t < horizon(); ++t) {
    Outcome y = path[t];
    Require(y >= 0 && y < alphabet(), ErrorCode::kDomain, "symbol out of range");
    v = space_.level_offset(t) + code;
    p *= cond_[v * alphabet() + y];
    code = code * alphabet() + y;
  }
  return p;
}

std::vector<double> JointDistribution::all_joint_probs() const {
  // Level-by-level products; each entry is the same left-to-right product
  // joint_prob computes.
  const int k = alphabet();
  std::vector<double> level{1.0};
  for (int t = 0; t < horizon(); ++t) {
    std::vector<double> next(level.size() * k);
    const std::size_t off = space_.level_offset(t);
    for (std::size_t c = 0; c < level.size(); ++c)
      for (int y = 0; y < k; ++y) next[c * k + y] = level[c] * cond_[(off + c) * k + y];
    level.swap(next);
  }
  return level;
}

double JointDistribution::min_conditional() const {
  if (cond_.empty()) return 1.0;
  return *std::min_element(cond_.begin(), cond_.end());
}

double DeltaNFloor(int horizon, int alphabet) {
  return 1.0 / (static_cast<double>(horizon) * horizon * alphabet);
}

bool JointDistribution::in_delta_n() const {
  if (horizon() == 0) return true;
  return min_conditional() >= DeltaNFloor(horizon(), alphabet());
}

// ---------------------------------------------------------------------------
// ContextTree

ContextTree::ContextTree(int depth, std::vector<int> nodes)
    : depth_(depth), space_(depth, 2), nodes_(std::move(nodes)) {
  Require(nodes_.size() == space_.num_nodes(), ErrorCode::kDomain,
          "context tree needs 2^n - 1 nodes");
  for (int x : nodes_) Require(x >= 0, ErrorCode::kDomain, "negative context");
}

ContextTree ContextTree::Constant(int depth, int context) {
  PathSpace space(depth, 2);
  return ContextTree(depth, std::vector<int>(space.num_nodes(), context));
}

int ContextTree::at(std::span<const Outcome> prefix) const {
  Require(prefix.size() < static_cast<std::size_t>(depth_), ErrorCode::kDomain,
          "prefix length must be < depth");
  return nodes_[space_.prefix_index(prefix)];
}

std::vector<int> ContextTree::along(std::span<const Outcome> path) const {
  std::vector<int> xs;
  for (int t = 0; t < depth_; ++t) xs.push_back(at(path.subspan(0, t)));
  return xs;
}

// ---------------------------------------------------------------------------
// ExpertClass

const char* ClassKindName(ClassKind kind) {
  switch (kind) {
    case ClassKind::kFiniteJoint: return "finite-joint";
    case ClassKind::kFiniteFunction: return "finite-function";
    case ClassKind::kGrid: return "grid";
  }
  return "unknown";
}

namespace {
void CheckJointMembers(const std::vector<JointDistribution>& members) {
  Require(!members.empty(), ErrorCode::kDomain, "expert class is empty");
  for (const auto& q : members)
    Require(q.horizon() == members[0].horizon() && q.alphabet() == members[0].alphabet(),
            ErrorCode::kDomain, "members disagree on horizon or alphabet");
}
}  // namespace

ExpertClass ExpertClass::FiniteJoint(std::vector<JointDistribution> members) {
  CheckJointMembers(members);
  ExpertClass c;
  c.kind_ = ClassKind::kFiniteJoint;
  c.joints_ = std::move(members);
  return c;
}

ExpertClass ExpertClass::FiniteFunction(int num_contexts, std::vector<std::vector<double>> values,
                                        std::optional<GridInfo> grid) {
  Require(!values.empty(), ErrorCode::kDomain, "expert class is empty");
  Require(num_contexts >= 1, ErrorCode::kDomain, "need at least one context");
  for (const auto& f : values) {
    Require(f.size() == static_cast<std::size_t>(num_contexts), ErrorCode::kDomain,
            "function has wrong number of context values");
    for (double v : f) Require(v >= 0.0 && v <= 1.0, ErrorCode::kDomain, "function value outside [0,1]");
  }
  ExpertClass c;
  c.kind_ = ClassKind::kFiniteFunction;
  c.num_contexts_ = num_contexts;
  c.functions_ = std::move(values);
  c.grid_ = std::move(grid);
  return c;
}

ExpertClass ExpertClass::Grid(GridInfo info, std::vector<JointDistribution> members,
                              SupFunction closed_form) {
  CheckJointMembers(members);
  ExpertClass c;
  c.kind_ = ClassKind::kGrid;
  info.closed_form_sup = static_cast<bool>(closed_form);
  c.grid_ = std::move(info);
  c.joints_ = std::move(members);
  c.closed_form_ = std::move(closed_form);
  return c;
}

std::size_t ExpertClass::size() const { return is_joint() ? joints_.size() : functions_.size(); }

int ExpertClass::horizon() const {
  Require(is_joint(), ErrorCode::kUnsupported, "function classes have no horizon");
  return joints_[0].horizon();
}

int ExpertClass::alphabet() const { return is_joint() ? joints_[0].alphabet() : 2; }

const std::vector<JointDistribution>& ExpertClass::joints() const {
  Require(is_joint(), ErrorCode::kUnsupported, "operation needs a joint class");
  return joints_;
}

int ExpertClass::num_contexts() const {
  Require(!is_joint(), ErrorCode::kUnsupported, "operation needs a function class");
  return num_contexts_;
}

const std::vector<std::vector<double>>& ExpertClass::functions() const {
  Require(!is_joint(), ErrorCode::kUnsupported, "operation needs a function class");
  return functions_;
}

// ---------------------------------------------------------------------------
// Transcript and operations

void GameTranscript::Append(int context, double p_hat, Outcome y) {
  rounds_.push_back({context, p_hat, y, LogLoss(p_hat, y)});
}

double GameTranscript::cumulative_loss() const {
  double s = 0.0;
  for (const auto& r : rounds_) s += r.loss;
  return s;
}

double Conditional(const JointDistribution& q, std::span<const Outcome> prefix, Outcome y) {
  return q.conditional(prefix, y);
}

double JointProb(const JointDistribution& q, std::span<const Outcome> path) {
  return q.joint_prob(path);
}

double LogLoss(double p_hat, Outcome y) {
  Require(p_hat >= 0.0 && p_hat <= 1.0, ErrorCode::kDomain, "p_hat outside [0,1]");
  Require(y == 0 || y == 1, ErrorCode::kDomain, "log loss needs a binary outcome");
  double p = y == 1 ? p_hat : 1.0 - p_hat;
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(p);
}

JointDistribution ComposeFunction(std::span<const double> f, const ContextTree& x) {
  std::vector<double> cond;
  cond.reserve(x.nodes().size() * 2);
  for (int ctx : x.nodes()) {
    Require(static_cast<std::size_t>(ctx) < f.size(), ErrorCode::kDomain,
            "tree context outside the class's context set");
    cond.push_back(1.0 - f[ctx]);
    cond.push_back(f[ctx]);
  }
  return JointDistribution(x.depth(), 2, std::move(cond));
}

ExpertClass ComposeClassWithTree(const ExpertClass& f, const ContextTree& x) {
  Require(!f.is_joint(), ErrorCode::kUnsupported, "composition needs a function class");
  std::vector<JointDistribution> out;
  for (const auto& fn : f.functions()) {
    JointDistribution q = ComposeFunction(fn, x);
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
  }
  return ExpertClass::FiniteJoint(std::move(out));
}

double EmpiricalRegret(const GameTranscript& transcript, const ExpertClass& f,
                       std::span<const int> x_path, std::span<const Outcome> y_path) {
  Require(f.size() > 0, ErrorCode::kDomain, "empty class");
  const auto& rounds = transcript.rounds();
  Require(rounds.size() == y_path.size(), ErrorCode::kDomain, "transcript and path lengths differ");
  for (std::size_t t = 0; t < rounds.size(); ++t)
    Require(rounds[t].y == y_path[t], ErrorCode::kDomain, "transcript disagrees with y_path");
  double best = std::numeric_limits<double>::infinity();
  if (f.is_joint()) {
    Require(static_cast<int>(y_path.size()) == f.horizon(), ErrorCode::kDomain,
            "path length must equal the class horizon");
    for (const auto& q : f.joints()) {
      double p = q.joint_prob(y_path);
      best = std::min(best, p > 0 ? -std::log(p) : std::numeric_limits<double>::infinity());
    }
  } else {
    Require(x_path.size() == y_path.size(), ErrorCode::kDomain, "context and outcome lengths differ");
    for (const auto& fn : f.functions()) {
      double loss = 0.0;
      for (std::size_t t = 0; t < y_path.size(); ++t) {
        Require(x_path[t] >= 0 && x_path[t] < f.num_contexts(), ErrorCode::kDomain,
                "context out of range");
        loss += LogLoss(fn[x_path[t]], y_path[t]);
      }
      best = std::min(best, loss);
    }
  }
  double mine = transcript.cumulative_loss();
  if (std::isinf(mine)) return mine;
  return mine - best;
}

}  // namespace seqlab
